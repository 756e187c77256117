// Random hyperplane sections through a 3-fold double point.

#include <jetdisc/algebra/parse.hpp>
#include <jetdisc/classify/top.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    using namespace jetdisc;
    std::string eq = argc > 1 ? argv[1] : "x^2+y^2+z^2+w^2";
    auto ring = make_ring(RationalField{}, {"x", "y", "z", "w"});
    VarietyJob<RationalField> job{IdealPresentation<RationalField>(ring, {parse_poly(eq, ring)}), 3, {0, 0, 0, 0}};
    auto rep = cdv_hyperplane_test(job, 5, 42);
    for (auto const& cut : rep.cuts) {
        std::cout << "cut";
        for (auto const& a : cut.coefficients) std::cout << ' ' << a;
        std::cout << " -> " << cut.classification.name() << "\n";
    }
    std::cout << "majority " << rep.majority << ", compound " << rep.compound.value_or("none") << "\n";
}
