#include <gtest/gtest.h>

#include "equiwitt/catalog.hpp"
#include "equiwitt/cohom.hpp"
#include "equiwitt/gspace.hpp"
#include "test_util.hpp"

using namespace equiwitt;

TEST(Sphere, EulerCharacteristicAndDimension) {
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q) {
            if (p + q < 1) continue;
            SimplicialGComplex s = sphere(p, q);
            int n = p + q - 1;
            EXPECT_EQ(s.dim(), n);
            EXPECT_EQ(s.euler_characteristic(), n % 2 == 0 ? 2 : 0) << p << "," << q;
        }
}

TEST(Sphere, FixedSetIsSmallerSphere) {
    for (int p = 1; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q) {
            SimplicialGComplex s = sphere(p, q);
            SimplicialGComplex f = fixed_subcomplex(s);
            if (q == 0) {
                EXPECT_EQ(f.vertex_count(), 0u);
                EXPECT_TRUE(s.is_free());
                continue;
            }
            EXPECT_EQ(f.dim(), q - 1);
            EXPECT_EQ(f.euler_characteristic(), (q - 1) % 2 == 0 ? 2 : 0);
        }
}

TEST(Sphere, OrdinaryCohomology) {
    GModule z = standard_gmodule("Z");
    for (int n = 1; n <= 4; ++n) {
        SimplicialGComplex s = sphere(1, n);  // S^n
        for (int q = 0; q <= n; ++q) {
            FGAbGroup expect = (q == 0 || q == n) ? FGAbGroup::free(1) : FGAbGroup::trivial();
            EXPECT_EQ(ordinary_cohomology(s, z, q), expect) << "S^" << n << " degree " << q;
        }
    }
}

TEST(Products, EulerCharacteristicMultiplies) {
    SimplicialGComplex a = sphere(2, 1), b = sphere(1, 1), c = sphere(0, 2);
    EXPECT_EQ(product(a, b).euler_characteristic(), a.euler_characteristic() * b.euler_characteristic());
    EXPECT_EQ(product(a, a).euler_characteristic(), 4);
    EXPECT_EQ(product(b, c).euler_characteristic(), 0);
    EXPECT_EQ(product(a, b).dim(), 3);
}

TEST(Products, FixedSetOfProductIsProductOfFixedSets) {
    SimplicialGComplex x = product(sphere(1, 2), sphere(2, 1));
    SimplicialGComplex f = fixed_subcomplex(x);
    // circle x two points
    EXPECT_EQ(connected_components(f).count, 2);
    EXPECT_EQ(f.euler_characteristic(), 0);
    EXPECT_EQ(fixed_components(x), 2);
}

TEST(Products, DiagonalActionIsSimplicial) {
    SimplicialGComplex x = product(sphere(2, 0), sphere(3, 0));
    EXPECT_TRUE(x.is_free());
    EXPECT_EQ(x.euler_characteristic(), 0);
    RegularityReport r = validate(x);
    EXPECT_TRUE(r.is_free);
}

TEST(Subdivision, PreservesEulerCharacteristicAndFixedSet) {
    for (auto name : {"S(2,1)", "S(1,2)", "theta", "torus-SxS11", "RP2-6"}) {
        SimplicialGComplex x = build_space(name);
        SimplicialGComplex y = barycentric_subdivide(x);
        EXPECT_EQ(x.euler_characteristic(), y.euler_characteristic()) << name;
        EXPECT_EQ(fixed_subcomplex(x).euler_characteristic(), fixed_subcomplex(y).euler_characteristic()) << name;
        EXPECT_EQ(fixed_components(x), fixed_components(y)) << name;
    }
}

TEST(Subdivision, PreparedIsRegularAndOrderPreserving) {
    for (auto name : {"S(2,0)", "S(3,0)", "S(2,1)", "theta", "Q2"}) {
        SimplicialGComplex y = prepared(build_space(name));
        RegularityReport r = validate(y);
        EXPECT_TRUE(r.is_regular) << name << ": " << r.detail;
        EXPECT_TRUE(r.orbit_separated) << name;
        for (int d = 0; d <= y.dim(); ++d)
            for (std::size_t i = 0; i < y.count(d); ++i) {
                int j = y.sigma_index(d, i);
                if (static_cast<std::size_t>(j) == i) EXPECT_TRUE(y.fixed_pointwise(d, i));
            }
    }
}

TEST(Quotient, AntipodalSphereGivesProjectivePlane) {
    QuotientResult q = quotient(subdivide_until_quotient_ok(sphere(3, 0)).complex);
    EXPECT_TRUE(validate(subdivide_until_quotient_ok(sphere(3, 0)).complex).quotient_ok);
    EXPECT_EQ(q.complex.euler_characteristic(), 1);
    GModule z = standard_gmodule("Z");
    EXPECT_EQ(ordinary_cohomology(q.complex, z, 1), FGAbGroup::trivial());
    EXPECT_EQ(ordinary_cohomology(q.complex, z, 2), FGAbGroup::cyclic(2));
}

TEST(Quotient, ReflectionCircleGivesInterval) {
    QuotientResult q = quotient(subdivide_until_quotient_ok(sphere(1, 1)).complex);
    EXPECT_EQ(q.complex.euler_characteristic(), 1);
    EXPECT_EQ(quotient_h1_mod2(sphere(1, 1)), 0);
    EXPECT_EQ(quotient_h1_mod2(sphere(2, 0)), 1);
}

TEST(Json, RoundTrip) {
    SimplicialGComplex x = build_space("theta");
    SimplicialGComplex y = SimplicialGComplex::from_json(x.to_json());
    EXPECT_EQ(x, y);
    EXPECT_EQ(x.to_json(), y.to_json());
}

TEST(Json, RejectsBadInput) {
    EXPECT_THROW(SimplicialGComplex::from_json("{"), InputError);
    // involution not of order two
    EXPECT_THROW(SimplicialGComplex::from_json(R"({"vertices":["a","b","c"],"involution":{"a":"b","b":"c","c":"a"},"maximal_simplices":[["a","b","c"]]})"),
                 InputError);
    // involution that is not simplicial
    EXPECT_THROW(SimplicialGComplex::from_json(R"({"vertices":["a","b","c"],"involution":{"a":"b","b":"a","c":"c"},"maximal_simplices":[["a","c"]]})"),
                 InputError);
}

TEST(Components, DisjointUnionAndDouble) {
    SimplicialGComplex x = build_space("S11+S11");
    EXPECT_EQ(connected_components(x).count, 2);
    EXPECT_EQ(components_of(x).size(), 2u);
    SimplicialGComplex g = build_space("GxCP1");
    EXPECT_EQ(connected_components(g).count, 2);
    EXPECT_EQ(components_of(g).size(), 1u);  // one orbit of components
    EXPECT_TRUE(g.is_free());
}

TEST(Surfaces, Recognition) {
    EXPECT_TRUE(is_closed_surface(build_space("torus-SxS11")));
    EXPECT_TRUE(is_closed_surface(sphere(1, 2)));
    EXPECT_FALSE(is_closed_surface(sphere(1, 3)));
    EXPECT_TRUE(is_circle_union(fixed_subcomplex(build_space("torus-SxS11"))));
    EXPECT_TRUE(is_circle_union(sphere(0, 2)));
}

TEST(Join, SuspensionOfCircle) {
    SimplicialGComplex s = join(sphere(0, 2), sphere(1, 0));
    EXPECT_EQ(s.dim(), 2);
    EXPECT_EQ(s.euler_characteristic(), 2);
    EXPECT_EQ(fixed_subcomplex(s).euler_characteristic(), 0);  // S^{1,2}: fixed circle
}

TEST(CellCap, EnvironmentOverride) {
    ::setenv("EQUIWITT_MAX_CELLS", "50", 1);
    EXPECT_EQ(max_cells(), 50u);
    EXPECT_THROW(product(product(sphere(1, 2), sphere(1, 2)), sphere(1, 2)), Error);
    ::unsetenv("EQUIWITT_MAX_CELLS");
    EXPECT_EQ(max_cells(), 4'000'000u);
}
