// Prints the low-order product coefficients as graph sums and in invariant
// form, together with the inverse-series terms.

#include "bstar/series.hpp"
#include "bstar/tensor.hpp"

#include <iostream>

int main() {
    using namespace bstar;
    for (int k = 0; k <= 3; ++k) {
        auto ck = star_coefficient(k);
        std::cout << "C_" << k << " graph terms:\n";
        for (const auto& [g, c] : ck.terms())
            std::cout << "  " << to_string(c) << "  " << encode(g) << "\n";
        auto coords = to_invariant_basis(ck, k);
        std::cout << "  = " << render_combination(coords, sigma_basis(k), RenderFormat::Text)
                  << "\n";
    }

    auto p = invert_series(berezin_series(3));
    for (int k = 1; k <= 3; ++k) {
        std::cout << "inverse series, order " << k << ":\n";
        for (const auto& [g, c] : p.terms[k].terms())
            std::cout << "  " << to_string(c) << "  " << encode(g) << "\n";
    }
    return 0;
}
