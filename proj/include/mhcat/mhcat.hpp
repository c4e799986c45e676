#ifndef MHCAT_MHCAT_HPP
#define MHCAT_MHCAT_HPP

#include "mhcat/error.hpp"
#include "mhcat/semiring.hpp"
#include "mhcat/space.hpp"
#include "mhcat/kernel.hpp"
#include "mhcat/enrichment.hpp"
#include "mhcat/mcmc.hpp"
#include "mhcat/mh_algorithms.hpp"
#include "mhcat/coproducts.hpp"
#include "mhcat/sampler.hpp"
#include "mhcat/random.hpp"
#include "mhcat/model.hpp"

#endif  // MHCAT_MHCAT_HPP
