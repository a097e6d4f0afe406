#pragma once

#include "numfan/counting.hpp"
#include "numfan/csv.hpp"
#include "numfan/dependence.hpp"
#include "numfan/design.hpp"
#include "numfan/fans.hpp"
#include "numfan/linalg.hpp"
#include "numfan/order_ideal.hpp"
#include "numfan/scalar.hpp"
#include "numfan/term.hpp"
