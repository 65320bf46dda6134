#pragma once

#include "ogeg/distributions.hpp"

namespace ogeg {

/// r-th smallest of n i.i.d. OGE-G draws.
struct OrderStatSpec {
    int n;
    int r;
    OgegParams params;

    /// Throws DomainError unless 1 <= r <= n and params are valid.
    void validate() const;
};

/// f_{r:n}(x) = F^{r-1} (1-F)^{n-r} f / B(r, n-r+1), evaluated in log space.
/// This is the default evaluation path.
double order_stat_pdf_direct(const OrderStatSpec& spec, double x);

/// Same density written as a signed combination of OGE-G densities with
/// shape (r+i)*beta, i = 0..n-r. The terms alternate, so cancellation grows
/// with n; prefer the direct form beyond n of a few tens.
double order_stat_pdf_mixture(const OrderStatSpec& spec, double x);

}  // namespace ogeg
