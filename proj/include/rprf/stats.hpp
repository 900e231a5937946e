#pragma once

#include <cstddef>
#include <span>

namespace rprf::stats {

/// Pearson statistic against a uniform expectation over all cells.
double chi_square_uniform(std::span<const std::size_t> observed);
/// Upper-tail probability of a chi-square variate with `dof` degrees of freedom.
double chi_square_pvalue(double statistic, double dof);

double poisson_pmf(double mean, unsigned k);
double binomial_pmf(std::size_t trials, double p, unsigned k);

}  // namespace rprf::stats
