#include "nematic/qtensor.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nematic {

Matrix3 TracelessSym3::matrix() const {
  return {{{q11, q12, q13}, {q12, q22, q23}, {q13, q23, q33()}}};
}

TracelessSym3 TracelessSym3::project(const Matrix3& m) {
  const double tr3 = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
  return {m[0][0] - tr3, m[1][1] - tr3, 0.5 * (m[0][1] + m[1][0]), 0.5 * (m[0][2] + m[2][0]),
          0.5 * (m[1][2] + m[2][1])};
}

ModelParams::ModelParams(double a, double b, double c, double delta, double eta)
    : a_(a), b_(b), c_(c), delta_(delta), eta_(eta) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) {
    throw std::invalid_argument("model parameters a, b, c must all be positive");
  }
  if (!(b * b > 27.0 * a * c)) {
    std::ostringstream msg;
    msg << "parameters (a, b, c) = (" << a << ", " << b << ", " << c
        << ") lie outside the bistable region D: require b^2 > 27ac (b^2 = " << b * b
        << ", 27ac = " << 27.0 * a * c << ")";
    throw std::invalid_argument(msg.str());
  }
  if (!(delta > 0.0)) throw std::invalid_argument("weight exponent delta must be positive");
  if (!(eta > 0.0)) throw std::invalid_argument("smallness threshold eta must be positive");
}

TracelessSym3 make_uniaxial(double lambda) { return {lambda, lambda, 0.0, 0.0, 0.0}; }

double frobenius_inner(const TracelessSym3& p, const TracelessSym3& q) {
  return p.q11 * q.q11 + p.q22 * q.q22 + p.q33() * q.q33() +
         2.0 * (p.q12 * q.q12 + p.q13 * q.q13 + p.q23 * q.q23);
}

double frobenius_norm(const TracelessSym3& q) { return std::sqrt(trace_sq(q)); }

double trace_cube(const TracelessSym3& q) {
  // tr(Q^3) = 3 det Q for traceless Q.
  const double x = q.q11, y = q.q22, z = q.q33(), u = q.q12, v = q.q13, w = q.q23;
  const double det = x * (y * z - w * w) - u * (u * z - w * v) + v * (u * w - y * v);
  return 3.0 * det;
}

TracelessSym3 traceless_square(const TracelessSym3& q) {
  const double x = q.q11, y = q.q22, z = q.q33(), u = q.q12, v = q.q13, w = q.q23;
  const double s11 = x * x + u * u + v * v;
  const double s22 = u * u + y * y + w * w;
  const double s33 = v * v + w * w + z * z;
  const double tr3 = (s11 + s22 + s33) / 3.0;
  return {s11 - tr3, s22 - tr3, x * u + u * y + v * w, x * v + u * w + v * z,
          u * v + y * w + w * z};
}

TracelessSym3 reaction_rhs(const TracelessSym3& q, const Kinetics& k) {
  const double tq2 = trace_sq(q);
  TracelessSym3 out = k.b * traceless_square(q);
  out -= (k.a + k.c * tq2) * q;
  return out;
}

TracelessSym3 reaction_rhs(const TracelessSym3& q, const ModelParams& p) {
  return reaction_rhs(q, Kinetics::of(p));
}

TracelessSym3 nonlinearity_h(const TracelessSym3& r, double t, const Kinetics& k) {
  const double e1 = std::exp(-k.a * t);
  const double tr2 = trace_sq(r);
  TracelessSym3 out = (k.b * e1) * traceless_square(r);
  out -= (k.c * e1 * e1 * tr2) * r;
  return out;
}

TracelessSym3 nonlinearity_h(const TracelessSym3& r, double t, const ModelParams& p) {
  return nonlinearity_h(r, t, Kinetics::of(p));
}

double bulk_energy_density(const TracelessSym3& q, const Kinetics& k) {
  const double tq2 = trace_sq(q);
  return 0.5 * k.a * tq2 - (k.b / 3.0) * trace_cube(q) + 0.25 * k.c * tq2 * tq2;
}

double bulk_energy_density(const TracelessSym3& q, const ModelParams& p) {
  return bulk_energy_density(q, Kinetics::of(p));
}

double uniaxial_potential(double l, const ModelParams& p) {
  const double l2 = l * l;
  return 0.5 * p.a() * l2 + (p.b() / 3.0) * l2 * l + 1.5 * p.c() * l2 * l2;
}

double lambda_star(const ModelParams& p) {
  // Nonzero critical points solve 6c l^2 + b l + a = 0.
  const double qa = 6.0 * p.c(), qb = p.b(), qc = p.a();
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc <= 0.0) {
    throw std::domain_error("bulk potential has no nonzero critical point");
  }
  const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
  double best = 0.0;
  double best_v = 0.0;
  for (double root : {q / qa, qc / q}) {
    // One Newton polish on the quadratic keeps the residual at roundoff.
    const double f = (qa * root + qb) * root + qc;
    root -= f / (2.0 * qa * root + qb);
    const double v = uniaxial_potential(root, p);
    if (v < best_v) {
      best_v = v;
      best = root;
    }
  }
  if (!(best_v < 0.0)) {
    throw std::domain_error("bulk potential has no critical point with negative energy");
  }
  return best;
}

double interface_width(const ModelParams& p) {
  return 1.0 / (std::sqrt(3.0 * p.c()) * std::abs(lambda_star(p)));
}

}  // namespace nematic
