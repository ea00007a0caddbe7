// stochtopo.hpp -- umbrella header.

#ifndef STOCHTOPO_STOCHTOPO_HPP
#define STOCHTOPO_STOCHTOPO_HPP

#include "stochtopo/calibration.hpp"
#include "stochtopo/config.hpp"
#include "stochtopo/delay.hpp"
#include "stochtopo/generation.hpp"
#include "stochtopo/geometry.hpp"
#include "stochtopo/intensity.hpp"
#include "stochtopo/io.hpp"
#include "stochtopo/matern.hpp"
#include "stochtopo/parallel.hpp"
#include "stochtopo/pipeline.hpp"
#include "stochtopo/placement.hpp"
#include "stochtopo/rng.hpp"
#include "stochtopo/validation.hpp"

#endif  // STOCHTOPO_STOCHTOPO_HPP
