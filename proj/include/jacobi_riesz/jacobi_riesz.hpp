#pragma once

#include "errors.hpp"
#include "parallel.hpp"
#include "special_functions.hpp"
#include "quadrature.hpp"
#include "corner_integral.hpp"
#include "jacobi_transforms.hpp"
#include "kernel_lab.hpp"
#include "weights.hpp"
#include "sphere.hpp"
#include "csv.hpp"
#include "config.hpp"
#include "suites.hpp"
