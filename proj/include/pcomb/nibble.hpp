#ifndef PCOMB_NIBBLE_HPP
#define PCOMB_NIBBLE_HPP

#include "nibble/generators.hpp"
#include "nibble/graph.hpp"
#include "nibble/independent.hpp"
#include "nibble/io.hpp"

#endif // PCOMB_NIBBLE_HPP
