#ifndef PCOMB_DISCREPANCY_HPP
#define PCOMB_DISCREPANCY_HPP

#include "discrepancy/ap_discrepancy.hpp"
#include "discrepancy/baseline.hpp"
#include "discrepancy/beck_fiala.hpp"
#include "discrepancy/generators.hpp"
#include "discrepancy/io.hpp"
#include "discrepancy/iterated.hpp"
#include "discrepancy/lovett_meka.hpp"
#include "discrepancy/partial_coloring_oracle.hpp"
#include "discrepancy/spencer.hpp"
#include "discrepancy/sticky_walk.hpp"
#include "discrepancy/types.hpp"

#endif // PCOMB_DISCREPANCY_HPP
