#ifndef PCOMB_PACKING_HPP
#define PCOMB_PACKING_HPP

#include "packing/geometry.hpp"
#include "packing/packing_graph.hpp"
#include "packing/pipelines.hpp"
#include "packing/point_cloud.hpp"

#endif // PCOMB_PACKING_HPP
