#pragma once

#include "pdacc/combinatorics.hpp"
#include "pdacc/designs.hpp"
#include "pdacc/error.hpp"
#include "pdacc/framework.hpp"
#include "pdacc/gf.hpp"
#include "pdacc/hamming.hpp"
#include "pdacc/pda.hpp"
#include "pdacc/schemes.hpp"
#include "pdacc/sim.hpp"
#include "pdacc/tables.hpp"
