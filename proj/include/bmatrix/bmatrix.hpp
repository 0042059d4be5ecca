// Umbrella header.

#pragma once

#include "bmatrix/complexity.hpp"
#include "bmatrix/core.hpp"
#include "bmatrix/experiments.hpp"
#include "bmatrix/io.hpp"
#include "bmatrix/retrieval.hpp"
#include "bmatrix/rng.hpp"
#include "bmatrix/sitemap_svg.hpp"
#include "bmatrix/sites.hpp"
#include "bmatrix/training.hpp"
