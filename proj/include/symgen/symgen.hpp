#pragma once

#include "symgen/combinatorics.hpp"
#include "symgen/errors.hpp"
#include "symgen/families.hpp"
#include "symgen/fock.hpp"
#include "symgen/linalg.hpp"
#include "symgen/operators.hpp"
#include "symgen/parallel.hpp"
#include "symgen/report.hpp"
#include "symgen/ring.hpp"
#include "symgen/scalar.hpp"
#include "symgen/series.hpp"
#include "symgen/shifted.hpp"
#include "symgen/verify.hpp"
