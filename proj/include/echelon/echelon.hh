/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef ECHELON_GUARD_ECHELON_HH
#define ECHELON_GUARD_ECHELON_HH 1

#include <echelon/amalgam.hh>
#include <echelon/canonical.hh>
#include <echelon/colgraph.hh>
#include <echelon/enumerate.hh>
#include <echelon/errors.hh>
#include <echelon/katetov.hh>
#include <echelon/limit.hh>
#include <echelon/metric.hh>
#include <echelon/ramsey.hh>
#include <echelon/rational.hh>
#include <echelon/space.hh>
#include <echelon/stern_brocot.hh>

#endif
