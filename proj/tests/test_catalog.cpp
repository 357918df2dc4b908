#include <gtest/gtest.h>

#include <set>

#include "equiwitt/catalog.hpp"

using namespace equiwitt;

TEST(Catalog, NamesAreUniqueAndBuild) {
    std::set<std::string> seen;
    for (auto& e : catalog()) {
        EXPECT_TRUE(seen.insert(e.name).second) << e.name;
        EXPECT_FALSE(e.citation.empty()) << e.name;
        if (e.pathway == Pathway::simplicial) {
            SimplicialGComplex x = build_space(e.name);
            EXPECT_GT(x.vertex_count(), 0u) << e.name;
            EXPECT_EQ(SimplicialGComplex::from_json(build_json(e.name)), x) << e.name;
        } else {
            EXPECT_NO_THROW(build_json(e.name)) << e.name;
        }
    }
    EXPECT_GE(seen.size(), 40u);
    EXPECT_THROW(catalog_entry("no-such-space"), InputError);
}

TEST(Catalog, SmallEntriesVerify) {
    for (auto name : {"S(0,2)", "S(1,1)", "S(2,0)", "S(1,2)", "S(2,1)", "S(3,0)", "theta", "torus-SxS11", "S11+S11",
                      "RP2-6", "curve-g2-nu1", "ruled-CxQ1-g2-nu3", "motzkin-level4", "ExE-algebraic", "Q3"}) {
        VerifyReport r = verify(name);
        EXPECT_TRUE(r.passed) << name << ": " << (r.failures.empty() ? "" : r.failures.front());
    }
}

TEST(Catalog, SubdivisionCheckedOnSmallEntries) {
    VerifyReport r = verify("S(2,1)");
    EXPECT_TRUE(r.subdivision_checked);
}

TEST(Catalog, ResolutionTableEntriesExist) {
    for (auto& [name, group] : resolution_table()) {
        EXPECT_NO_THROW(catalog_entry(name)) << name;
        EXPECT_EQ(catalog_entry(name).resolution, group) << name;
    }
}

TEST(Catalog, JunitIsDeterministicApartFromTimings) {
    std::vector<VerifyReport> a{verify("S(1,1)"), verify("S(2,0)")};
    std::vector<VerifyReport> b{verify("S(1,1)"), verify("S(2,0)")};
    for (auto* v : {&a, &b})
        for (auto& r : *v) r.seconds = 0;
    EXPECT_EQ(junit_xml(a), junit_xml(b));
    std::string x = junit_xml(a);
    EXPECT_NE(x.find("<testsuite"), std::string::npos);
    EXPECT_NE(x.find("S(1,1)"), std::string::npos);
}

TEST(Catalog, FailingVerificationIsReported) {
    VerifyReport r;
    r.name = "broken";
    r.passed = false;
    r.failures.push_back("witt: got Z, expected Z/2");
    std::string x = junit_xml({r});
    EXPECT_NE(x.find("<failure"), std::string::npos);
}
