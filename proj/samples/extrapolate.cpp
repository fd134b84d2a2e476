// Fit continued roots to the first terms of a series and watch the
// strong-coupling amplitude settle.

#include <cstdio>
#include <numbers>
#include <vector>

#include <continued_roots/continued_roots.hpp>

namespace cr = continued_roots;

int main()
{
    const auto problem = cr::problem("fluid_string");
    const double s = cr::exponent_to_power(problem.beta);

    std::vector<cr::continued_root> fits;
    for (std::size_t k = 1; k <= 10; ++k) {
        fits.push_back(cr::fit(problem.series(k), s));
    }
    const auto& best = cr::best_real_order(fits);
    std::printf("s = %.6f, highest real order %zu\n", s, best.order());

    for (double g : {0.5, 2.0, 8.0, 32.0}) {
        std::printf("g = %5.1f  f*_%zu = %.6f  exact = %.6f\n", g, best.order(), cr::evaluate(best, g),
                    cr::string_exact_f(g));
    }

    const auto report = cr::sequence_report(fits, problem.target(), problem.mapping());
    std::printf("%s", cr::to_text(report).c_str());
}
