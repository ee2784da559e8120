// Loads a V-polytope from JSON (default: samples/data/polytope_square.json)
// and tabulates its support function, the gauge of its polar, and the two
// symmetrized support functions over a few directions.

#include <asymgeo/asymgeo.hpp>

#include <cstdio>

int main(int argc, char** argv)
{
    using namespace asymgeo;
    const std::string path = argc > 1 ? argv[1] : ASYMGEO_SAMPLE_DATA "/polytope_square.json";
    const auto parsed = load_polytope(path);
    if (!std::holds_alternative<VPolytope>(parsed)) {
        std::fprintf(stderr, "expected a V-polytope in %s\n", path.c_str());
        return 1;
    }
    const auto& m = std::get<VPolytope>(parsed);
    if (m.dim() != 2) {
        std::fprintf(stderr, "this demo tabulates 2D directions only\n");
        return 1;
    }
    const auto m_polar = polar(m);

    std::printf("x0,x1,support,polar_gauge,sup_sym,balanced_core\n");
    for (const Point& x : {Point{1, 0}, Point{1, 1}, Point{-2, 0.5}, Point{0.3, -1.7}}) {
        std::printf("%g,%g,%.12g,%.12g,%.12g,%.12g\n", x[0], x[1], support(m, x), gauge(m_polar, x),
                    support_symmetrized(m, x, Symmetrization::sup), support_balanced_core(m, x));
    }
}
