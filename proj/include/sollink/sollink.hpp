#pragma once

#include "sollink/rational.hpp"
#include "sollink/qfield.hpp"
#include "sollink/sol.hpp"
#include "sollink/cycles.hpp"
#include "sollink/special_fn.hpp"
#include "sollink/qseries.hpp"
#include "sollink/io.hpp"
