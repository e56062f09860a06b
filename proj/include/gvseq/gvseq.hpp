#pragma once

#include "gvseq/divisibility.hpp"
#include "gvseq/errors.hpp"
#include "gvseq/interval.hpp"
#include "gvseq/matrix.hpp"
#include "gvseq/poly.hpp"
#include "gvseq/rational.hpp"
#include "gvseq/recurrence.hpp"
#include "gvseq/roots.hpp"
#include "gvseq/vandermonde.hpp"
