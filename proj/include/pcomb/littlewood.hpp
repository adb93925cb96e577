#ifndef PCOMB_LITTLEWOOD_HPP
#define PCOMB_LITTLEWOOD_HPP

#include "littlewood/assemble.hpp"
#include "littlewood/bad_intervals.hpp"
#include "littlewood/cosine_part.hpp"
#include "littlewood/evaluate.hpp"
#include "littlewood/io.hpp"
#include "littlewood/poly.hpp"
#include "littlewood/push.hpp"
#include "littlewood/rudin_shapiro.hpp"
#include "littlewood/sine_part.hpp"

#endif // PCOMB_LITTLEWOOD_HPP
