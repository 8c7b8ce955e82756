#pragma once

#include "ghzw/error.hpp"
#include "ghzw/gaussian_rational.hpp"
#include "ghzw/state.hpp"
#include "ghzw/state_io.hpp"
#include "ghzw/exact_linalg.hpp"
#include "ghzw/correspondence.hpp"
#include "ghzw/partitions.hpp"
#include "ghzw/canonical.hpp"
#include "ghzw/relative_ilo.hpp"
#include "ghzw/monomial_scaling.hpp"
#include "ghzw/simplest_form.hpp"
#include "ghzw/ghz_classifier.hpp"
#include "ghzw/w_classifier.hpp"
#include "ghzw/oracle.hpp"
