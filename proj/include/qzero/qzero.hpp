#pragma once

#include "qzero/bounds.hpp"
#include "qzero/checks.hpp"
#include "qzero/error.hpp"
#include "qzero/exact_height.hpp"
#include "qzero/exact_linalg.hpp"
#include "qzero/heights.hpp"
#include "qzero/io.hpp"
#include "qzero/log.hpp"
#include "qzero/orders.hpp"
#include "qzero/quaternion.hpp"
#include "qzero/trace_form.hpp"
#include "qzero/zero_solver.hpp"
