#pragma once

#include "errors.hpp"
#include "half_int.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "maslov.hpp"
#include "ode.hpp"
#include "orbits.hpp"
#include "parallel.hpp"
#include "paths.hpp"
#include "random_loops.hpp"
#include "report.hpp"
#include "section.hpp"
#include "spectral.hpp"
#include "surface.hpp"
#include "verify.hpp"
