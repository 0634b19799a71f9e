#pragma once

#include <complex>

namespace nov {

using cplx = std::complex<double>;

// Carlson symmetric integrals on the principal branch (arguments cut along
// the negative real axis). All throw Error(Branch) for arguments on the cut
// or with more than one zero, and Error(NoConvergence) past 200 steps.
cplx carlson_rf(cplx x, cplx y, cplx z);
cplx carlson_rj(cplx x, cplx y, cplx z, cplx p);
cplx carlson_rc(cplx x, cplx y);

// Legendre forms. Third-kind characteristics use the 1 + n sin^2 t
// convention:
//   Pi(phi, n, k) = int_0^phi dt / ((1 + n sin^2 t) sqrt(1 - k^2 sin^2 t)).

/// K(k) = int_0^{pi/2} dt / sqrt(1 - k^2 sin^2 t).
cplx ellip_K(cplx k);
cplx ellip_F(cplx phi, cplx k);
cplx ellip_Pi_complete(cplx n, cplx k);
cplx ellip_Pi_incomplete(cplx phi, cplx n, cplx k);

/// F and Pi from (sin phi, cos^2 phi) directly. Used where phi comes out of
/// an arcsin whose argument sits at +-1 and the amplitude itself is
/// ill-conditioned while its sine and squared cosine are not.
cplx ellip_F_sc(cplx sin_phi, cplx cos2_phi, cplx k);
cplx ellip_Pi_sc(cplx sin_phi, cplx cos2_phi, cplx n, cplx k);

/// arcsin z = -i log(iz + sqrt(1 - z^2)), principal log and root.
cplx complex_arcsin(cplx z);

}  // namespace nov
