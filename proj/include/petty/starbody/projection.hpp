#pragma once

#include "petty/core/exec.hpp"
#include "petty/starbody/star_body.hpp"
#include "petty/starbody/support.hpp"

namespace petty {

// Support function of the projection body,
//   h_{Pi K}(z) = 1/2 int_{boundary K} |z . nu| dH^{n-1},
// evaluated at every grid direction z.
//
// The surface-weighted normal field V (see surface_vectors) is interpolated
// and |V . z| is integrated piecewise between its zero crossings, so the kink
// of |.| costs no accuracy: exactly per spline cell in the plane, along
// meridians of a frame with pole z in space.
SupportProfile projection_body(const StarBody& body, Exec exec = default_exec());

// Nodal rule 1/2 sum_i w_i rho_i^{n-2} mean_k |N_ik . z|: the literal
// discretization, kept serial as the reference for the kernel above.
SupportProfile projection_body_reference(const StarBody& body);

}  // namespace petty
