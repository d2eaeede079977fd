#pragma once

#include "ehrhart_local/rational.hpp"
#include "ehrhart_local/eps_scalar.hpp"
#include "ehrhart_local/vec2.hpp"
#include "ehrhart_local/convex_poly.hpp"
#include "ehrhart_local/poly_set.hpp"
#include "ehrhart_local/cone2.hpp"
#include "ehrhart_local/perturbation.hpp"
#include "ehrhart_local/fundamental_domain.hpp"
#include "ehrhart_local/context.hpp"
#include "ehrhart_local/halfplane_region.hpp"
#include "ehrhart_local/wedge_region.hpp"
#include "ehrhart_local/lattice_polygon.hpp"
#include "ehrhart_local/mu_table.hpp"
#include "ehrhart_local/ehrhart.hpp"
#include "ehrhart_local/verify.hpp"
#include "ehrhart_local/svg.hpp"
