#include "rprf/stats.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <stdexcept>

namespace rprf::stats {

double chi_square_uniform(std::span<const std::size_t> observed) {
  if (observed.empty()) throw std::invalid_argument("chi-square: no cells");
  double total = 0.0;
  for (auto o : observed) total += static_cast<double>(o);
  const double expected = total / static_cast<double>(observed.size());
  double stat = 0.0;
  for (auto o : observed) {
    const double diff = static_cast<double>(o) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

double chi_square_pvalue(double statistic, double dof) {
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<double>(dof), statistic));
}

double poisson_pmf(double mean, unsigned k) {
  return boost::math::pdf(boost::math::poisson_distribution<double>(mean), k);
}

double binomial_pmf(std::size_t trials, double p, unsigned k) {
  return boost::math::pdf(boost::math::binomial_distribution<double>(static_cast<double>(trials), p), k);
}

}  // namespace rprf::stats
