// s-sequence, mld and classification of a few surface germs at the origin.

#include <jetdisc/algebra/parse.hpp>
#include <jetdisc/classify/top.hpp>
#include <jetdisc/mld/mld.hpp>

#include <iostream>

int main()
{
    using namespace jetdisc;
    auto ring = make_ring(RationalField{}, {"x", "y", "z"});
    for (auto const* eq : {"z^2+x^3+y^4", "z^2+x*y^2", "x^4+y^4+z^4", "x+y^2"}) {
        VarietyJob<RationalField> job{IdealPresentation<RationalField>(ring, {parse_poly(eq, ring)}), 2, {0, 0, 0}};
        auto top = top_singularity_test(job);
        std::cout << eq << "\n  s =";
        for (int s : top.mld.seq.values()) std::cout << ' ' << s;
        std::cout << "\n  mld = " << top.mld.estimate->to_string() << " (" << top.mld.certificate << ")"
                  << "\n  label = " << top.classification->name() << "\n  top = " << std::boolalpha << top.top << "\n";
    }
}
