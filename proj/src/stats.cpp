#include "shiftcert/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "shiftcert/error.hpp"

namespace shiftcert {

TTestResult one_sample_t_test(std::size_t n, double mean, double sd, double mu0, Tail tail) {
  if (n < 2) throw DomainError("t-test needs at least two observations");
  TTestResult r;
  r.dof = n - 1;
  r.tail = tail;
  if (!(sd > 0.0)) {
    const bool equal = mean == mu0;
    r.t = equal ? 0.0 : std::copysign(INFINITY, mean - mu0);
    if (equal) {
      r.p_value = 1.0;
    } else if (tail == Tail::TwoSided) {
      r.p_value = 0.0;
    } else {
      r.p_value = (tail == Tail::Greater) == (mean > mu0) ? 0.0 : 1.0;
    }
    return r;
  }
  r.t = (mean - mu0) / (sd / std::sqrt(static_cast<double>(n)));
  const boost::math::students_t dist(static_cast<double>(r.dof));
  switch (tail) {
    case Tail::Greater:
      r.p_value = boost::math::cdf(boost::math::complement(dist, r.t));
      break;
    case Tail::Less:
      r.p_value = boost::math::cdf(dist, r.t);
      break;
    case Tail::TwoSided:
      r.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t))));
      break;
  }
  return r;
}

TTestResult directional_t_test(std::size_t n, double mean, double sd, double mu0) {
  return one_sample_t_test(n, mean, sd, mu0, mean > mu0 ? Tail::Greater : Tail::Less);
}

double binomial_cdf(std::size_t k, std::size_t n, double p) {
  if (k >= n) return 1.0;
  const boost::math::binomial dist(static_cast<double>(n), p);
  return boost::math::cdf(dist, static_cast<double>(k));
}

double sample_sd(std::size_t n, double sum, double sum_sq) {
  if (n < 2) return 0.0;
  const double dn = static_cast<double>(n);
  const double var = (sum_sq - sum * sum / dn) / (dn - 1.0);
  return var > 0.0 ? std::sqrt(var) : 0.0;
}

}  // namespace shiftcert
