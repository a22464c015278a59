#include "flattori/catalog.hpp"

#include <regex>
#include <sstream>

namespace flattori::catalog {

LatticeBasis dn(std::size_t n) {
    if (n < 2) throw DomainError("dn needs n >= 2");
    RatMat a(n, n);
    a(0, 0) = 1;
    a(1, 0) = 1;
    for (std::size_t j = 1; j < n; ++j) {
        a(j - 1, j) = 1;
        a(j, j) = -1;
    }
    return LatticeBasis(a);
}

LatticeBasis en(std::size_t n) {
    if (n == 0 || n % 4 != 0) throw DomainError("en needs n divisible by 4");
    RatMat a(n, n);
    a(0, 0) = 1;
    a(1, 0) = 1;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        a(j - 1, j) = 1;
        a(j, j) = -1;
    }
    for (std::size_t i = 0; i < n; ++i) a(i, n - 1) = Rat(1, 2);
    return LatticeBasis(a);
}

BasisPair milnor_pair() { return {direct_product(en(8), en(8)), en(16)}; }

BasisPair kneser_pair() { return {dn(12), direct_product(en(8), dn(4))}; }

FormPair schiemann4d_pair() {
    return {QuadraticForm(RatMat{{4, 2, 0, 1}, {2, 8, 3, 1}, {0, 3, 10, 5}, {1, 1, 5, 10}}),
            QuadraticForm(RatMat{{4, 0, 1, 1}, {0, 8, 1, -4}, {1, 1, 8, 2}, {1, -4, 2, 10}})};
}

IntMat conway_sloane_t(bool plus) {
    int s = plus ? 3 : -3;
    return IntMat{{s, 1, 1, 1}, {-1, s, -1, 1}, {-1, 1, s, -1}, {-1, -1, 1, s}};
}

FormPair conway_sloane(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
    if (a <= 0 || b <= 0 || c <= 0 || d <= 0) throw DomainError("conway_sloane needs positive parameters");
    RatMat diag(4, 4);
    diag(0, 0) = a / 12;
    diag(1, 1) = b / 12;
    diag(2, 2) = c / 12;
    diag(3, 3) = d / 12;
    auto form = [&](bool plus) {
        RatMat t = to_rat(conway_sloane_t(plus));
        return QuadraticForm(t.transpose() * diag * t);
    };
    return {form(true), form(false)};
}

BasisPair prop6dim_pair() {
    RatMat lambda{{1, 1, 0, 0, 0, 0},  {1, -1, 0, 0, 0, 0}, {0, 0, 1, 1, 0, 0},
                  {0, 0, 1, -1, 0, 0}, {0, 0, 0, 0, 1, 1},  {0, 0, 0, 0, 1, -1}};
    RatMat omega{{1, 1, 0, 0, 0, 1},  {0, 0, 0, 0, 1, 1}, {1, -1, 1, 0, 0, 0},
                 {0, 0, 0, 0, 1, -1}, {0, 0, 1, 0, 1, 0}, {0, 0, 0, 2, 1, 1}};
    return {LatticeBasis(lambda), LatticeBasis(omega)};
}

CodePair prop6dim_codes() {
    std::vector<Codeword> c1 = {{0, 0, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0}, {0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 1, 1},
                                {1, 1, 1, 1, 0, 0}, {1, 1, 0, 0, 1, 1}, {0, 0, 1, 1, 1, 1}, {1, 1, 1, 1, 1, 1}};
    std::vector<Codeword> c2 = {{0, 0, 0, 0, 0, 0}, {1, 0, 1, 0, 0, 0}, {0, 0, 1, 0, 1, 0}, {1, 0, 0, 0, 1, 0},
                                {0, 1, 0, 1, 1, 1}, {1, 1, 0, 1, 0, 1}, {0, 1, 1, 1, 0, 1}, {1, 1, 1, 1, 1, 1}};
    return {LinearCode(2, 6, c1), LinearCode(2, 6, c2)};
}

LatticeBasis vdw_basis(std::size_t n) {
    if (n < 4) throw DomainError("vdw_basis needs n >= 4");
    RatMat a(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) a(i, i) = 1;
    for (std::size_t i = 0; i < n; ++i) a(i, n - 1) = Rat(1, 2);
    return LatticeBasis(a);
}

Entry get(const std::string& name) {
    static const std::regex call(R"(\s*([a-z0-9_]+)\s*(?:\(([^)]*)\))?\s*)");
    std::smatch m;
    if (!std::regex_match(name, m, call)) throw DomainError("unknown catalog entry: " + name);
    std::string head = m[1];
    std::vector<std::string> args;
    if (m[2].matched) {
        std::stringstream ss(m[2].str());
        std::string a;
        while (std::getline(ss, a, ',')) {
            a.erase(0, a.find_first_not_of(" \t"));
            a.erase(a.find_last_not_of(" \t") + 1);
            args.push_back(a);
        }
    }
    auto want = [&](std::size_t k) {
        if (args.size() != k) throw DomainError(head + " expects " + std::to_string(k) + " argument(s)");
    };
    auto as_size = [&](const std::string& s) {
        Rat r = parse_rat(s);
        if (r.get_den() != 1 || r < 1) throw DomainError("expected a positive integer, got " + s);
        return static_cast<std::size_t>(r.get_num().get_ui());
    };
    if (head == "dn") {
        want(1);
        return {name, dn(as_size(args[0]))};
    }
    if (head == "en") {
        want(1);
        return {name, en(as_size(args[0]))};
    }
    if (head == "vdw_basis") {
        want(1);
        return {name, vdw_basis(as_size(args[0]))};
    }
    if (head == "conway_sloane") {
        want(4);
        return {name, conway_sloane(parse_rat(args[0]), parse_rat(args[1]), parse_rat(args[2]), parse_rat(args[3]))};
    }
    want(0);
    if (head == "milnor_pair") return {name, milnor_pair()};
    if (head == "kneser_pair") return {name, kneser_pair()};
    if (head == "schiemann4d_pair") return {name, schiemann4d_pair()};
    if (head == "prop6dim_pair") return {name, prop6dim_pair()};
    if (head == "prop6dim_codes") return {name, prop6dim_codes()};
    throw DomainError("unknown catalog entry: " + name);
}

}  // namespace flattori::catalog
