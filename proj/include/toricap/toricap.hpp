#pragma once

#include "toricap/capacities.hpp"
#include "toricap/error.hpp"
#include "toricap/lattice.hpp"
#include "toricap/oracle.hpp"
#include "toricap/polygon_io.hpp"
#include "toricap/rational.hpp"
#include "toricap/toric.hpp"
