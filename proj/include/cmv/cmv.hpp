#pragma once

#include "core.hpp"
#include "banded.hpp"
#include "cmv_matrix.hpp"
#include "factorization.hpp"
#include "darboux_forward.hpp"
#include "darboux_inverse.hpp"
#include "higher_degree.hpp"
#include "quasi.hpp"
#include "szego.hpp"
#include "flows.hpp"
