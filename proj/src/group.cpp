// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#include "oag/group.hpp"

#include <algorithm>
#include <sstream>

namespace oag {

std::string rat_to_string(const Rat& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << "/" << denominator(q);
    return os.str();
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den <= 0) throw std::invalid_argument("rational with nonpositive denominator: " + s);
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational: " + s);
    }
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Int rng_int_in(Rng& rng, const Int& lo, const Int& hi) {
    Int width = hi - lo + 1;
    if (width <= 0) throw EmptyRegion("empty integer range");
    return lo + Int(rng_below(rng, width.convert_to<std::uint64_t>()));
}

GroupSpec GroupSpec::localized(std::vector<Int> primes) {
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (const Int& p : primes)
        if (!is_prime(p)) throw Error("not a prime: " + p.str());
    if (primes.empty()) return integers();
    return GroupSpec(GroupKind::localized, std::move(primes));
}

GroupSpec GroupSpec::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s == "Z") return integers();
    if (s == "Q") return rationals();
    if (s.size() >= 4 && s.rfind("Z[", 0) == 0 && s.back() == ']') {
        std::vector<Int> primes;
        std::string body = s.substr(2, s.size() - 3);
        std::istringstream is(body);
        std::string item;
        while (std::getline(is, item, ',')) {
            if (item.rfind("1/", 0) != 0) throw Error("bad group literal: " + text);
            primes.push_back(Int(item.substr(2)));
        }
        if (primes.empty()) throw Error("bad group literal: " + text);
        return localized(std::move(primes));
    }
    throw Error("bad group literal: " + text);
}

bool GroupSpec::contains(const Rat& q) const {
    if (kind_ == GroupKind::rationals) return true;
    Int den = denominator(q);
    if (kind_ == GroupKind::integers) return den == 1;
    for (const Int& p : primes_)
        while (den % p == 0) den /= p;
    return den == 1;
}

bool GroupSpec::is_p_divisible(const Int& p) const {
    switch (kind_) {
        case GroupKind::integers: return false;
        case GroupKind::rationals: return true;
        case GroupKind::localized:
            return std::find(primes_.begin(), primes_.end(), p) != primes_.end();
    }
    return false;
}

std::optional<Int> GroupSpec::minimal_nondivisible_prime() const {
    if (kind_ == GroupKind::rationals) return std::nullopt;
    for (Int p = 2;; ++p) {
        if (!is_prime(p)) continue;
        if (!is_p_divisible(p)) return p;
    }
}

Rat GroupSpec::witness_b() const {
    auto p = minimal_nondivisible_prime();
    if (!p) throw DivisibleGroup("witness_b: the group is divisible");
    return Rat(1, *p);
}

std::string GroupSpec::to_string() const {
    switch (kind_) {
        case GroupKind::integers: return "Z";
        case GroupKind::rationals: return "Q";
        case GroupKind::localized: {
            std::string s = "Z[";
            for (std::size_t i = 0; i < primes_.size(); ++i) {
                if (i) s += ",";
                s += "1/" + primes_[i].str();
            }
            return s + "]";
        }
    }
    return "?";
}

namespace {

// Numerator range for a/scale strictly inside (lo, hi); a finite window is
// substituted for missing bounds.
std::optional<std::pair<Int, Int>> integer_window(const Bound& lo, const Bound& hi, const Int& window,
                                                  const Int& scale) {
    Int a, b;
    if (lo)
        a = rat_floor(*lo * scale) + 1;
    else if (hi)
        a = rat_ceil(*hi * scale) - window;
    else
        a = -window / 2;
    if (hi)
        b = rat_ceil(*hi * scale) - 1;
    else
        b = a + window - 1;
    if (a > b) return std::nullopt;
    return std::make_pair(a, b);
}

}  // namespace

Rat sample_element(const GroupSpec& g, const Bound& lo, const Bound& hi, Rng& rng,
                   const SampleConfig& cfg) {
    if (lo && hi && *lo >= *hi) throw EmptyRegion("sample_element: empty interval");

    std::vector<Int> pool;
    if (g.kind() == GroupKind::localized)
        pool = g.inverted_primes();
    else if (g.kind() == GroupKind::rationals)
        pool = {Int(2), Int(3), Int(5)};

    for (int attempt = 0; attempt < cfg.retries; ++attempt) {
        Int den = 1;
        if (!pool.empty()) {
            Int p = pool[rng_below(rng, pool.size())];
            int e = static_cast<int>(rng_below(rng, cfg.max_denominator_exponent + 1));
            for (int i = 0; i < e; ++i) den *= p;
        }
        auto win = integer_window(lo, hi, cfg.window, den);
        if (!win) continue;
        Int num = rng_int_in(rng, win->first, win->second);
        Rat q(num, den);
        if ((!lo || *lo < q) && (!hi || q < *hi)) return q;
    }
    throw EmptyRegion("sample_element: retries exhausted");
}

}  // namespace oag
