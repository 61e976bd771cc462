#pragma once

#include "apm.hpp"
#include "bias.hpp"
#include "certificate.hpp"
#include "csv.hpp"
#include "distance.hpp"
#include "domination.hpp"
#include "frac_matching.hpp"
#include "lift.hpp"
#include "shadow.hpp"
#include "tester.hpp"
#include "threshold.hpp"
#include "verify.hpp"
