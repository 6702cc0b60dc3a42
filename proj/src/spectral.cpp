#include "fulldisp/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fulldisp {
namespace {

// FFTW plan creation is not thread safe, so plans are built once per size
// under a lock and then reused through the new-array execute interface.
// FFTW_UNALIGNED keeps the plans valid for arbitrarily aligned caller
// buffers, and FFTW_ESTIMATE keeps planning deterministic.
struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair get(int n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    double* re = fftw_alloc_real(n);
    fftw_complex* co = fftw_alloc_complex(n / 2 + 1);
    PlanPair p;
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.r2c = fftw_plan_dft_r2c_1d(n, re, co, flags);
    p.c2r = fftw_plan_dft_c2r_1d(n, co, re, flags);
    fftw_free(re);
    fftw_free(co);
    if (!p.r2c || !p.c2r) throw std::runtime_error("spectral: FFTW planning failed");
    plans_[n] = p;
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

void check_same_grid(const Grid1D& a, const Grid1D& b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace

RealField::RealField(const Grid1D& g, std::vector<double> values)
    : grid(g), v(std::move(values)) {
  if (static_cast<int>(v.size()) != g.n)
    throw std::invalid_argument("RealField: value count does not match grid");
}

RealField& RealField::operator+=(const RealField& o) {
  check_same_grid(grid, o.grid, "RealField::operator+=");
  for (int j = 0; j < grid.n; ++j) v[j] += o.v[j];
  return *this;
}

RealField& RealField::operator-=(const RealField& o) {
  check_same_grid(grid, o.grid, "RealField::operator-=");
  for (int j = 0; j < grid.n; ++j) v[j] -= o.v[j];
  return *this;
}

RealField& RealField::operator*=(double a) {
  for (double& x : v) x *= a;
  return *this;
}

RealField operator+(RealField a, const RealField& b) { return a += b; }
RealField operator-(RealField a, const RealField& b) { return a -= b; }
RealField operator*(double a, RealField f) { return f *= a; }

SpectralField forward(const RealField& f) {
  const int n = f.grid.n;
  SpectralField out(f.grid);
  std::vector<double> in(f.v);
  PlanPair p = PlanCache::instance().get(n);
  fftw_execute_dft_r2c(p.r2c, in.data(),
                       reinterpret_cast<fftw_complex*>(out.c.data()));
  const double scale = 1.0 / n;
  for (auto& c : out.c) c *= scale;
  return out;
}

RealField inverse(const SpectralField& s) {
  const int n = s.grid.n;
  RealField out(s.grid);
  // c2r transforms overwrite their complex input, so execute on a copy.
  std::vector<std::complex<double>> in(s.c);
  PlanPair p = PlanCache::instance().get(n);
  fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(in.data()),
                       out.v.data());
  return out;
}

SpectralField derivative(const SpectralField& s, int order) {
  if (order < 0) throw std::invalid_argument("derivative: order must be nonnegative");
  SpectralField out = s;
  const int nm = s.num_modes();
  for (int k = 0; k < nm; ++k) {
    std::complex<double> factor = std::pow(std::complex<double>(0.0, s.grid.xi(k)), order);
    out.c[k] *= factor;
  }
  if (order % 2 == 1) out.c[nm - 1] = 0.0;
  return out;
}

RealField derivative(const RealField& f, int order) {
  return inverse(derivative(forward(f), order));
}

SpectralField apply_multiplier(const SpectralField& s,
                               const std::function<double(double)>& symbol) {
  SpectralField out = s;
  for (int k = 0; k < s.num_modes(); ++k) out.c[k] *= symbol(s.grid.xi(k));
  return out;
}

RealField apply_multiplier(const RealField& f,
                           const std::function<double(double)>& symbol) {
  return inverse(apply_multiplier(forward(f), symbol));
}

void dealias(SpectralField& s) {
  for (int k = s.grid.dealias_cutoff() + 1; k < s.num_modes(); ++k) s.c[k] = 0.0;
}

RealField dealias(const RealField& f) {
  SpectralField s = forward(f);
  dealias(s);
  return inverse(s);
}

RealField product(const RealField& a, const RealField& b, bool dealias_result) {
  check_same_grid(a.grid, b.grid, "product");
  RealField out(a.grid);
  for (int j = 0; j < a.grid.n; ++j) out.v[j] = a.v[j] * b.v[j];
  if (dealias_result) out = dealias(out);
  return out;
}

RealField quotient(const RealField& a, const RealField& b,
                   bool dealias_result) {
  check_same_grid(a.grid, b.grid, "quotient");
  RealField out(a.grid);
  for (int j = 0; j < a.grid.n; ++j) out.v[j] = a.v[j] / b.v[j];
  if (dealias_result) out = dealias(out);
  return out;
}

double integrate(const RealField& f) {
  double sum = 0.0;
  for (double x : f.v) sum += x;
  return sum * f.grid.dx();
}

double inner(const RealField& a, const RealField& b) {
  check_same_grid(a.grid, b.grid, "inner");
  double sum = 0.0;
  for (int j = 0; j < a.grid.n; ++j) sum += a.v[j] * b.v[j];
  return sum * a.grid.dx();
}

double norm_l2(const RealField& f) { return std::sqrt(inner(f, f)); }

double norm_inf(const RealField& f) {
  double m = 0.0;
  for (double x : f.v) m = std::max(m, std::abs(x));
  return m;
}

RealField sample(const Grid1D& g, const std::function<double(double)>& fn) {
  RealField out(g);
  for (int j = 0; j < g.n; ++j) out.v[j] = fn(g.x(j));
  return out;
}

}  // namespace fulldisp
