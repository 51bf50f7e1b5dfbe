#ifndef EQK_EQK_HPP
#define EQK_EQK_HPP

#include "eqk/ensemble.hpp"
#include "eqk/error.hpp"
#include "eqk/experiments.hpp"
#include "eqk/fubini.hpp"
#include "eqk/heights.hpp"
#include "eqk/latgeo.hpp"
#include "eqk/numeric.hpp"
#include "eqk/parallel.hpp"
#include "eqk/polynomial.hpp"
#include "eqk/roots.hpp"
#include "eqk/selftest.hpp"
#include "eqk/svg.hpp"
#include "eqk/testfn.hpp"

#endif  // EQK_EQK_HPP
