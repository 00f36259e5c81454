#pragma once

#include "bunchlab/ensemble.hpp"
#include "bunchlab/gaussian.hpp"
#include "bunchlab/io.hpp"
#include "bunchlab/multi.hpp"
#include "bunchlab/pair.hpp"
#include "bunchlab/quadrature.hpp"
#include "bunchlab/rng.hpp"
#include "bunchlab/states.hpp"
