#include "sphlkc/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace sphlkc {

namespace {

// Excursion membership: closed set, exact ties count as inside (a tie is a
// measure-zero event for the fields this runs on).
inline bool inside(double v, double u) { return v >= u; }

double great_circle(double th1, double ph1, double th2, double ph2) {
  double c = std::cos(th1) * std::cos(th2) +
             std::sin(th1) * std::sin(th2) * std::cos(ph1 - ph2);
  c = std::min(1.0, std::max(-1.0, c));
  return std::acos(c);
}

struct CrossPoint {
  double theta, phi;
};

// Linear crossing of the level along a mesh edge, parameterized by the
// coordinate that varies.
inline double cross_param(double va, double vb, double u) {
  return (u - va) / (vb - va);
}

double ring_mean(const PixelField& f, int r) {
  const SphereGrid& g = *f.grid;
  double s = 0.0;
  for (int k = 0; k < g.n_phi(); ++k) s += f.at(r, k);
  return s / g.n_phi();
}

}  // namespace

double excursion_area(const PixelField& field, double u) {
  const SphereGrid& g = *field.grid;
  double s = 0.0;
  for (int r = 0; r < g.n_theta(); ++r) {
    double w = g.node_weight(r);
    for (int k = 0; k < g.n_phi(); ++k)
      if (inside(field.at(r, k), u)) s += w;
  }
  return s;
}

double boundary_length(const PixelField& field, double u) {
  const SphereGrid& g = *field.grid;
  const int nt = g.n_theta(), np = g.n_phi();
  double total = 0.0;

  // Quad cells between adjacent rings; the k+1 column wraps at the seam.
  for (int r = 0; r + 1 < nt; ++r) {
    double th0 = g.theta(r), th1 = g.theta(r + 1);
    for (int k = 0; k < np; ++k) {
      int k1 = (k + 1) % np;
      double ph0 = g.phi(k), ph1 = g.phi(k) + g.dphi();  // unwrapped
      double va = field.at(r, k), vb = field.at(r, k1);
      double vc = field.at(r + 1, k1), vd = field.at(r + 1, k);
      int code = (inside(va, u) ? 1 : 0) | (inside(vb, u) ? 2 : 0) |
                 (inside(vc, u) ? 4 : 0) | (inside(vd, u) ? 8 : 0);
      if (code == 0 || code == 15) continue;

      // Edge crossings: T between a-b, R between b-c, B between d-c, L
      // between a-d.
      auto top = [&] {
        return CrossPoint{th0, ph0 + cross_param(va, vb, u) * g.dphi()};
      };
      auto right = [&] {
        return CrossPoint{th0 + cross_param(vb, vc, u) * (th1 - th0), ph1};
      };
      auto bottom = [&] {
        return CrossPoint{th1, ph0 + cross_param(vd, vc, u) * g.dphi()};
      };
      auto left = [&] {
        return CrossPoint{th0 + cross_param(va, vd, u) * (th1 - th0), ph0};
      };
      auto add = [&](CrossPoint p, CrossPoint q) {
        total += great_circle(p.theta, p.phi, q.theta, q.phi);
      };

      switch (code) {
        case 1: case 14: add(top(), left()); break;
        case 2: case 13: add(top(), right()); break;
        case 4: case 11: add(right(), bottom()); break;
        case 8: case 7: add(bottom(), left()); break;
        case 3: case 12: add(left(), right()); break;
        case 6: case 9: add(top(), bottom()); break;
        case 5: {  // a, c inside
          bool center_in = inside(0.25 * (va + vb + vc + vd), u);
          if (center_in) {
            add(top(), right());
            add(bottom(), left());
          } else {
            add(top(), left());
            add(right(), bottom());
          }
          break;
        }
        case 10: {  // b, d inside
          bool center_in = inside(0.25 * (va + vb + vc + vd), u);
          if (center_in) {
            add(top(), left());
            add(right(), bottom());
          } else {
            add(top(), right());
            add(bottom(), left());
          }
          break;
        }
        default: break;
      }
    }
  }

  // Pole caps: triangle fans to the synthetic pole vertices.
  for (int cap = 0; cap < 2; ++cap) {
    int r = (cap == 0) ? 0 : nt - 1;
    double thp = (cap == 0) ? 0.0 : M_PI;
    double thr = g.theta(r);
    double vp = ring_mean(field, r);
    bool pin = inside(vp, u);
    for (int k = 0; k < np; ++k) {
      int k1 = (k + 1) % np;
      double ph0 = g.phi(k), ph1 = g.phi(k) + g.dphi();
      double va = field.at(r, k), vb = field.at(r, k1);
      bool ain = inside(va, u), bin = inside(vb, u);
      if (pin == ain && ain == bin) continue;
      CrossPoint pts[3];
      int n = 0;
      if (pin != ain)
        pts[n++] = {thp + cross_param(vp, va, u) * (thr - thp), ph0};
      if (pin != bin)
        pts[n++] = {thp + cross_param(vp, vb, u) * (thr - thp), ph1};
      if (ain != bin)
        pts[n++] = {thr, ph0 + cross_param(va, vb, u) * g.dphi()};
      if (n == 2)
        total += great_circle(pts[0].theta, pts[0].phi, pts[1].theta, pts[1].phi);
    }
  }
  return total;
}

long euler_characteristic(const PixelField& field, double u) {
  const SphereGrid& g = *field.grid;
  const int nt = g.n_theta(), np = g.n_phi();

  std::vector<char> in(g.n_nodes());
  for (int r = 0; r < nt; ++r)
    for (int k = 0; k < np; ++k)
      in[g.node_index(r, k)] = inside(field.at(r, k), u) ? 1 : 0;
  bool np_in = inside(ring_mean(field, 0), u);
  bool sp_in = inside(ring_mean(field, nt - 1), u);

  long V = 0, E = 0, F = 0;
  for (char c : in) V += c;
  if (np_in) ++V;
  if (sp_in) ++V;

  auto at = [&](int r, int k) { return in[g.node_index(r, k % np)] != 0; };

  for (int r = 0; r < nt; ++r)
    for (int k = 0; k < np; ++k)
      if (at(r, k) && at(r, k + 1)) ++E;  // parallel edges (seam wraps)
  for (int r = 0; r + 1 < nt; ++r)
    for (int k = 0; k < np; ++k)
      if (at(r, k) && at(r + 1, k)) ++E;  // meridian edges
  if (np_in)
    for (int k = 0; k < np; ++k)
      if (at(0, k)) ++E;
  if (sp_in)
    for (int k = 0; k < np; ++k)
      if (at(nt - 1, k)) ++E;

  for (int r = 0; r + 1 < nt; ++r)
    for (int k = 0; k < np; ++k)
      if (at(r, k) && at(r, k + 1) && at(r + 1, k) && at(r + 1, k + 1)) ++F;
  if (np_in)
    for (int k = 0; k < np; ++k)
      if (at(0, k) && at(0, k + 1)) ++F;
  if (sp_in)
    for (int k = 0; k < np; ++k)
      if (at(nt - 1, k) && at(nt - 1, k + 1)) ++F;

  return V - E + F;
}

ExcursionSummary summarize_excursion(const PixelField& field, double u) {
  ExcursionSummary s;
  s.level = u;
  s.area = excursion_area(field, u);
  s.boundary_length = boundary_length(field, u);
  s.euler_char = euler_characteristic(field, u);
  s.sup_value = *std::max_element(field.values.begin(), field.values.end());
  return s;
}

namespace {

// Peak of the quadratic through three (x, y) samples, restricted to the
// bracket; returns y1 when the fit is not concave around the middle sample.
double parabola_peak(double x0, double y0, double x1, double y1, double x2,
                     double y2) {
  double d1 = (y1 - y0) / (x1 - x0);
  double d2 = (y2 - y1) / (x2 - x1);
  double curv = (d2 - d1) / (x2 - x0);  // half the second derivative
  if (!(curv < 0.0)) return y1;
  double xs = 0.5 * (x0 + x1 - d1 / (2.0 * curv));
  if (xs < x0 || xs > x2) return y1;
  double ys = y0 + d1 * (xs - x0) + curv * (xs - x0) * (xs - x1);
  return std::max(ys, y1);
}

}  // namespace

double sup_refined(const PixelField& field) {
  const SphereGrid& g = *field.grid;
  const int nt = g.n_theta(), np = g.n_phi();
  auto it = std::max_element(field.values.begin(), field.values.end());
  std::size_t pos = static_cast<std::size_t>(it - field.values.begin());
  int r = static_cast<int>(pos) / np, k = static_cast<int>(pos) % np;
  double y1 = *it;

  double corr = 0.0;
  if (r > 0 && r + 1 < nt) {
    double p = parabola_peak(g.theta(r - 1), field.at(r - 1, k), g.theta(r), y1,
                             g.theta(r + 1), field.at(r + 1, k));
    corr += p - y1;
  }
  {
    int km = (k + np - 1) % np, kp = (k + 1) % np;
    double p = parabola_peak(-g.dphi(), field.at(r, km), 0.0, y1, g.dphi(),
                             field.at(r, kp));
    corr += p - y1;
  }
  return y1 + corr;
}

}  // namespace sphlkc
