// Prints the asymmetric dual-gauge unit ball around z = (0.5, 0.5) next to
// its balanced symmetrization, then the two directional norms that witness
// the asymmetry. Pipe the CSV into any plotting tool.

#include <asymgeo/asymgeo.hpp>

#include <cstdio>

int main()
{
    using namespace asymgeo;
    const NormContext ctx(Measure({0.5, 0.5}));

    std::printf("kind,angle,px,py\n");
    for (auto kind : {NormKind::gauge_dual, NormKind::symmetrized_dual}) {
        for (const auto& p : ball_boundary_sample(ctx, kind, 72).points)
            std::printf("%s,%.6f,%.9f,%.9f\n", to_string(kind), p.angle, p.point[0], p.point[1]);
    }

    const double forward = gauge_norm_dual(std::vector<double>{1.0, 0.0}, ctx).value;
    const double backward = gauge_norm_dual(std::vector<double>{-1.0, 0.0}, ctx).value;
    std::fprintf(stderr, "||(1,0)|  = %.12g\n||(-1,0)| = %.12g\n", forward, backward);
}
