#ifndef PCOMB_LWO_HPP
#define PCOMB_LWO_HPP

#include "lwo/exact_form.hpp"
#include "lwo/lcd.hpp"
#include "lwo/matrices.hpp"
#include "lwo/small_ball.hpp"

#endif // PCOMB_LWO_HPP
