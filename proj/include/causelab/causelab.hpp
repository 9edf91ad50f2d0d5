#ifndef CAUSELAB_CAUSELAB_HPP
#define CAUSELAB_CAUSELAB_HPP

#include "causelab/attribution.hpp"
#include "causelab/cause.hpp"
#include "causelab/dsl.hpp"
#include "causelab/formula.hpp"
#include "causelab/model.hpp"
#include "causelab/ness.hpp"
#include "causelab/normality.hpp"
#include "causelab/query.hpp"
#include "causelab/rational.hpp"

#endif  // CAUSELAB_CAUSELAB_HPP
