#ifndef SECRECY_SECRECY_HPP
#define SECRECY_SECRECY_HPP

#include "channel.hpp"
#include "cooperation.hpp"
#include "discrete.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "power_alloc.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "scenario.hpp"

#endif
