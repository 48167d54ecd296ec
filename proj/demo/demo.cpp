// Walks through the main library calls on a few states.
#include "gewit/gewit.hpp"

#include <cstdio>

int main() {
  using namespace gewit;

  // Region witnesses and their certificates.
  const RegionWitnesses rw = region_witnesses();
  const auto cert = certify_lemma1(rw.c_i);
  std::printf("C_I certified: %s  a = %.6f  max|c| = %.6f\n", cert.certified ? "yes" : "no", cert.a, cert.max_abs_c);

  // An NPT state of the gamma = 0 slice, its nearest separable state and distance.
  const SimplexParams p{0.5, 0.0, 0.0};
  const auto near = nearest_separable_gamma0(p.alpha, p.beta);
  std::printf("rho(0.5, 0, 0): region %s, nearest (%.4f, %.4f), D = %.6f, <rho, C_I> = %.6f\n", to_string(near.region),
              near.nearest.alpha, near.nearest.beta, near.distance, rw.c_i.expectation(simplex_operator(p)));

  // Same answer from the iterative nearest-PPT solver.
  const auto res = nearest_ppt(DensityMatrix(simplex_operator(p)));
  std::printf("nearest_ppt: %d iterations, distance %.6f\n", res.iterations, res.distance);

  // Horodecki states: PT verdict and region label.
  for (double b : {0.5, 1.5, 2.5, 3.5, 4.5}) {
    const RegionSample r = classify_horodecki(HorodeckiParam(b));
    std::printf("b = %.1f  min PT eigenvalue % .5f  %s\n", b, r.min_pt_eigenvalue, to_string(r.label));
  }

  // Detection thresholds of the line witness.
  for (double g : {0.2, 0.25, std::sqrt(5.0) / 7.0, 3.0 / 7.0}) {
    const DetectionProfile d = detection_profile(g);
    std::printf("gamma = %.4f  lambda_min = %.6f  detects: %s\n", g, d.lambda_min, d.detects ? "yes" : "no");
  }
  return 0;
}
