#include "doctest.h"

#include <random>

#include "flattori/catalog.hpp"
#include "flattori/modular.hpp"

using namespace flattori;

namespace {

QuadraticForm diag(std::initializer_list<Rat> d) {
    RatMat m(d.size(), d.size());
    std::size_t i = 0;
    for (const auto& v : d) m(i, i) = v, ++i;
    return QuadraticForm(m);
}

// brute-force level: smallest N with N Q^-1 even
BigInt level_scan(const QuadraticForm& q) {
    RatMat inv = inverse(q.matrix());
    for (BigInt n = 1;; ++n) {
        bool ok = true;
        for (std::size_t i = 0; i < q.dim() && ok; ++i)
            for (std::size_t j = 0; j < q.dim() && ok; ++j) {
                Rat v = inv(i, j) * n;
                ok = v.get_den() == 1 && (i != j || mpz_even_p(v.get_num_mpz_t()));
            }
        if (ok) return n;
    }
}

}  // namespace

TEST_CASE("even forms and rescaling") {
    CHECK(is_even(diag({2, 2})));
    CHECK(even_rescale(diag({2, 2})).first == 1);
    CHECK_FALSE(is_even(diag({1, 1})));
    auto [c, e] = even_rescale(diag({1, 1}));
    CHECK(c == 2);
    CHECK(e == diag({2, 2}));
    CHECK(even_rescale(QuadraticForm(RatMat{{Rat(1, 3), Rat(1, 4)}, {Rat(1, 4), 1}})).first == 12);

    auto cs = catalog::conway_sloane(1, 7, 13, 19);
    for (const auto* q : {&cs.first, &cs.second}) {
        auto [k, r] = even_rescale(*q);
        CHECK(is_even(r));
        // no proper divisor works
        for (BigInt d = 1; d < k; ++d)
            if (k % d == 0) {
                RatMat m = q->matrix();
                for (std::size_t i = 0; i < 4; ++i)
                    for (std::size_t j = 0; j < 4; ++j) m(i, j) *= d;
                CHECK_FALSE(is_even(QuadraticForm(m)));
            }
    }
}

TEST_CASE("level") {
    CHECK(level(diag({2, 2})) == 4);
    CHECK(level(diag({2, 2, 2, 2})) == 4);
    CHECK(level(gram(catalog::en(8))) == 1);
    CHECK(level(gram(catalog::en(16))) == 1);
    CHECK_THROWS_AS(level(diag({1, 1})), DomainError);
    auto s = catalog::schiemann4d_pair();
    auto e1 = even_rescale(s.first).second, e2 = even_rescale(s.second).second;
    CHECK(level(e1) == level(e2));
    CHECK(level(e1) == level_scan(e1));
    std::mt19937 rng(1);
    std::uniform_int_distribution<int> c(-2, 2);
    for (int t = 0; t < 40; ++t) {
        RatMat a(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) a(i, j) = c(rng);
        if (det(a) == 0) continue;
        auto q = even_rescale(QuadraticForm(a.transpose() * a)).second;
        CHECK(level(q) == level_scan(q));
    }
}

TEST_CASE("mu0 and the cutoff") {
    CHECK(mu0(1) == 1);
    CHECK(mu0(12) == 24);
    for (int p : {2, 3, 5, 7, 11, 13, 19}) CHECK(mu0(p) == p + 1);
    CHECK(mu0(1729) == Rat(1729) * Rat(8, 7) * Rat(14, 13) * Rat(20, 19));
    CHECK(sturm_cutoff(16, 1) == 1);
    CHECK(sturm_cutoff(4, 1729) == floor_rat(mu0(1729) * 2 / 12) + 1);
    CHECK_THROWS_AS(sturm_cutoff(3, 1), DomainError);
    CHECK_THROWS_AS(mu0(0), DomainError);
}

TEST_CASE("padding to even dimension") {
    auto p = pad_to_even_dim(diag({2}));
    CHECK(p == diag({2, 2}));
    QuadraticForm q(RatMat{{2, 1, 0}, {1, 4, 1}, {0, 1, 6}});
    auto pq = pad_to_even_dim(q);
    CHECK(pq.dim() % 2 == 0);
    Rat cut = 40;
    auto direct = representation_numbers(pq, cut);
    auto conv = convolve(representation_numbers(diag({2}), cut), representation_numbers(q, cut), cut);
    CHECK(direct == conv);
}

TEST_CASE("certificates") {
    QuadraticForm q(RatMat{{2, 1, 0}, {1, 4, 1}, {0, 1, 6}});
    auto self = certify_isospectral(q, q);
    CHECK(self.verdict == Verdict::Isospectral);
    CHECK(self.padded);

    auto d = certify_isospectral(diag({2, 2}), diag({2, 4}));
    CHECK(d.verdict == Verdict::NotIsospectral);
    CHECK_FALSE(d.det_equal);

    auto s = catalog::schiemann4d_pair();
    auto c = certify_isospectral(s.first, s.second);
    CHECK(c.verdict == Verdict::Isospectral);
    CHECK(c.det_equal);
    CHECK(c.level == level(even_rescale(s.first).second));
    CHECK(c.cutoff == sturm_cutoff(4, c.level));
    // the certificate agrees with direct enumeration well past the cutoff
    CHECK(isospectral_up_to(even_rescale(s.first).second, even_rescale(s.second).second, 4 * c.checked_to).equal);

    // same determinant and level, different representation numbers
    auto m = certify_isospectral(diag({2, 12}), diag({4, 6}));
    CHECK(m.verdict == Verdict::NotIsospectral);
    CHECK(m.level == 24);
    CHECK(m.reason == "representation numbers differ");
    CHECK(m.mismatch_value == 2);
    CHECK(m.mismatch_m1 == 2);
    CHECK(m.mismatch_m2 == 0);

    auto na = certify_isospectral(diag({1, 1}), diag({2, 2}));
    CHECK(na.verdict == Verdict::NotApplicable);
    CHECK_FALSE(na.reason.empty());

    auto cs = catalog::conway_sloane(1, 7, 13, 19);
    CHECK(certify_isospectral(cs.first, cs.second).verdict == Verdict::Isospectral);
}
