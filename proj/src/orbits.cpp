#include "jumpconj/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace jumpconj {

namespace {

std::string orbit_message(const char* what, int n, double prev, double next) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at step " << n << ": " << prev << " -> " << next;
  return os.str();
}

void check_args(int n_max, double endpoint_eps) {
  if (n_max < 0) throw ArgumentError("n_max must be non-negative");
  if (!(endpoint_eps > 0.0)) throw ArgumentError("endpoint_eps must be positive");
}

}  // namespace

int OrbitPartition::depth() const {
  if (family_ == Family::IncreasingA)
    return static_cast<int>(std::max(left_.size(), right_.size())) - 1;
  return static_cast<int>(points_.size()) - 1;
}

OrbitPartition boundary_orbit_A(const JumpMap& m, int n_max, double endpoint_eps) {
  if (m.family() != Family::IncreasingA) throw ArgumentError("boundary_orbit_A needs a family A map");
  check_args(n_max, endpoint_eps);
  OrbitPartition p;
  p.family_ = Family::IncreasingA;
  p.a_ = m.a();
  p.b_ = m.b();
  p.t_ = m.t();
  p.endpoint_eps_ = endpoint_eps;

  p.left_.push_back(m.t());
  while (static_cast<int>(p.left_.size()) <= n_max && p.left_.back() - m.a() > endpoint_eps) {
    const double prev = p.left_.back();
    const double next = m.left()(prev);
    if (!(next < prev) || next < m.a() - endpoint_eps)
      throw OrbitError(orbit_message("left orbit of t is not strictly decreasing toward a",
                                     static_cast<int>(p.left_.size()), prev, next));
    p.left_.push_back(std::max(next, m.a()));
  }

  p.right_.push_back(m.t());
  while (static_cast<int>(p.right_.size()) <= n_max && m.b() - p.right_.back() > endpoint_eps) {
    const double prev = p.right_.back();
    const double next = m.right()(prev);
    if (!(next > prev) || next > m.b() + endpoint_eps)
      throw OrbitError(orbit_message("right orbit of t is not strictly increasing toward b",
                                     static_cast<int>(p.right_.size()), prev, next));
    p.right_.push_back(std::min(next, m.b()));
  }
  return p;
}

OrbitPartition boundary_orbit_B(const JumpMap& m, int n_max, double endpoint_eps, Side closure) {
  if (m.family() != Family::DecreasingB) throw ArgumentError("boundary_orbit_B needs a family B map");
  check_args(n_max, endpoint_eps);
  OrbitPartition p;
  p.family_ = Family::DecreasingB;
  p.a_ = m.a();
  p.b_ = m.b();
  p.t_ = m.t();
  p.endpoint_eps_ = endpoint_eps;
  p.closure_ = closure;

  // Terms whose index has this parity sit left of t and decrease toward a.
  const int left_parity = closure == Side::Left ? 0 : 1;
  auto limit_of = [&](std::size_t n) {
    return static_cast<int>(n % 2) == left_parity ? m.a() : m.b();
  };
  auto near_limit = [&](std::size_t n) {
    return std::abs(p.points_[n] - limit_of(n)) <= endpoint_eps;
  };

  auto& pts = p.points_;
  pts.push_back(m.t());
  while (static_cast<int>(pts.size()) <= n_max) {
    const std::size_t n = pts.size();
    if (n >= 2 && near_limit(n - 1) && near_limit(n - 2)) break;
    const double prev = pts.back();
    double next = 0.0;
    if (n == 1) next = m.limit(closure);
    else if (prev < m.t()) next = m.left()(prev);
    else next = m.right()(prev);

    const bool on_left = static_cast<int>(n % 2) == left_parity;
    bool ok = next >= m.a() - endpoint_eps && next <= m.b() + endpoint_eps;
    if (n == 1) {
      ok = ok && (closure == Side::Left ? next > m.t() : next < m.t());
    } else if (n == 2 && closure == Side::Right) {
      ok = ok && next > m.t();
    } else {
      const double before = pts[n - 2];
      ok = ok && (on_left ? next < before : next > before);
    }
    if (!ok)
      throw OrbitError(orbit_message(on_left ? "boundary orbit is not decreasing toward a on its left terms"
                                             : "boundary orbit is not increasing toward b on its right terms",
                                     static_cast<int>(n), prev, next));
    pts.push_back(std::clamp(next, m.a(), m.b()));
  }
  return p;
}

CellIndex locate(const OrbitPartition& p, double x) {
  using Region = CellIndex::Region;
  if (!(x >= p.a() && x <= p.b())) {
    std::ostringstream os;
    os.precision(17);
    os << "x = " << x << " outside [" << p.a() << ", " << p.b() << "]";
    throw DomainError(os.str());
  }
  if (x == p.t()) return {Region::Left, 0};
  if (x - p.a() <= p.endpoint_eps()) return {Region::EndpointA, 0};
  if (p.b() - x <= p.endpoint_eps()) return {Region::EndpointB, 0};

  auto depth_error = [&]() {
    std::ostringstream os;
    os.precision(17);
    os << "x = " << x << " lies beyond the truncated orbit (depth " << p.depth()
       << "); raise n_max";
    return DepthExceeded(os.str());
  };

  if (p.family() == Family::IncreasingA) {
    if (x < p.t()) {
      const auto& pts = p.left_points();
      // first j >= 1 with pts[j] < x; cell n = j - 1
      auto it = std::partition_point(pts.begin() + 1, pts.end(), [x](double v) { return v >= x; });
      if (it == pts.end()) throw depth_error();
      return {Region::Left, static_cast<int>(it - pts.begin()) - 1};
    }
    const auto& pts = p.right_points();
    auto it = std::partition_point(pts.begin() + 1, pts.end(), [x](double v) { return v <= x; });
    if (it == pts.end()) throw depth_error();
    return {Region::Right, static_cast<int>(it - pts.begin()) - 1};
  }

  if (p.closure() != Side::Left) throw ArgumentError("locate needs the left-closure partition");
  const auto& pts = p.points();
  if (pts.size() < 2) {
    if (x > p.t()) throw depth_error();
  }
  if (x < p.t()) {
    // even terms E_k = pts[2k]; first j >= 1 with E_j <= x; cell index 2(j-1)
    std::size_t j = 1;
    std::size_t lo = 1;
    std::size_t hi = (pts.size() + 1) / 2;  // number of even terms
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (pts[2 * mid] <= x) hi = mid;
      else lo = mid + 1;
    }
    j = lo;
    if (j >= (pts.size() + 1) / 2) throw depth_error();
    return {Region::Left, 2 * static_cast<int>(j - 1)};
  }
  if (x < pts[1]) return {Region::Gap, 0};
  // odd terms O_k = pts[2k+1]; first j >= 1 with O_j >= x; cell index 2(j-1)+1
  const std::size_t n_odd = pts.size() / 2;
  std::size_t lo = 1;
  std::size_t hi = n_odd;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (pts[2 * mid + 1] >= x) hi = mid;
    else lo = mid + 1;
  }
  if (lo >= n_odd) throw depth_error();
  return {Region::Right, 2 * static_cast<int>(lo - 1) + 1};
}

}  // namespace jumpconj
