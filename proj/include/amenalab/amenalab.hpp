#pragma once

#include "amenalab/algebra.hpp"
#include "amenalab/approximate_identity.hpp"
#include "amenalab/approximation.hpp"
#include "amenalab/config.hpp"
#include "amenalab/derivations.hpp"
#include "amenalab/linear_algebra.hpp"
#include "amenalab/operators.hpp"
#include "amenalab/polynomial.hpp"
#include "amenalab/rational.hpp"
#include "amenalab/report.hpp"
#include "amenalab/similarity.hpp"
#include "amenalab/spectrum.hpp"
#include "amenalab/verify.hpp"
