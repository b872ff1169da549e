#pragma once

#include "spinprobe/errors.hpp"
#include "spinprobe/hilbert.hpp"
#include "spinprobe/model.hpp"
#include "spinprobe/observables.hpp"
#include "spinprobe/solver.hpp"
#include "spinprobe/spectroscopy.hpp"
#include "spinprobe/witness.hpp"
