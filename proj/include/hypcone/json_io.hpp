#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypcone/bounds.hpp"
#include "hypcone/family.hpp"
#include "hypcone/interval.hpp"
#include "hypcone/multipoly.hpp"
#include "hypcone/rational.hpp"
#include "hypcone/spectra.hpp"

namespace hypcone {

using json = nlohmann::ordered_json;

/// SHA-1 of a byte string, hex-encoded. Used as a content fingerprint for
/// report provenance, not for anything security-sensitive.
inline std::string sha1_hex(std::string_view data) {
    std::array<std::uint32_t, 5> h = {0x67452301u, 0xEFCDAB89u, 0x98BADCFEu, 0x10325476u,
                                      0xC3D2E1F0u};
    const std::uint64_t total_bits = static_cast<std::uint64_t>(data.size()) * 8;
    std::vector<unsigned char> msg(data.begin(), data.end());
    msg.push_back(0x80);
    while (msg.size() % 64 != 56) msg.push_back(0x00);
    for (int i = 7; i >= 0; --i) msg.push_back(static_cast<unsigned char>(total_bits >> (8 * i)));

    auto rotl = [](std::uint32_t v, int s) { return (v << s) | (v >> (32 - s)); };
    for (std::size_t off = 0; off < msg.size(); off += 64) {
        std::array<std::uint32_t, 80> w{};
        for (int i = 0; i < 16; ++i)
            w[i] = (std::uint32_t(msg[off + 4 * i]) << 24) |
                   (std::uint32_t(msg[off + 4 * i + 1]) << 16) |
                   (std::uint32_t(msg[off + 4 * i + 2]) << 8) | std::uint32_t(msg[off + 4 * i + 3]);
        for (int i = 16; i < 80; ++i) w[i] = rotl(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
        std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4];
        for (int i = 0; i < 80; ++i) {
            std::uint32_t f, k;
            if (i < 20) {
                f = (b & c) | (~b & d);
                k = 0x5A827999u;
            } else if (i < 40) {
                f = b ^ c ^ d;
                k = 0x6ED9EBA1u;
            } else if (i < 60) {
                f = (b & c) | (b & d) | (c & d);
                k = 0x8F1BBCDCu;
            } else {
                f = b ^ c ^ d;
                k = 0xCA62C1D6u;
            }
            const std::uint32_t tmp = rotl(a, 5) + f + e + k + w[i];
            e = d;
            d = c;
            c = rotl(b, 30);
            b = a;
            a = tmp;
        }
        h[0] += a;
        h[1] += b;
        h[2] += c;
        h[3] += d;
        h[4] += e;
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(40);
    for (const std::uint32_t v : h)
        for (int i = 7; i >= 0; --i) out.push_back(hex[(v >> (4 * i)) & 0xF]);
    return out;
}

inline json family_to_json(const MatchingFamily& fam) {
    json j;
    j["n"] = fam.n;
    j["d"] = fam.d;
    j["seed"] = fam.seed;
    json ms = json::array();
    for (const Matching& m : fam.matchings) {
        json edges = json::array();
        for (const auto& [u, v] : m.edges) edges.push_back(json::array({u, v}));
        ms.push_back(std::move(edges));
    }
    j["matchings"] = std::move(ms);
    json gs = json::array();
    for (const auto& s : fam.good_sets) gs.push_back(s);
    j["good_sets"] = std::move(gs);
    return j;
}

inline MatchingFamily family_from_json(const json& j) {
    MatchingFamily fam;
    fam.n = j.at("n").get<int>();
    fam.d = j.at("d").get<int>();
    fam.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& edges : j.at("matchings")) {
        Matching m;
        for (const auto& e : edges) {
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument("family_from_json: edge must be a pair");
            m.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        m.canonicalize();
        m.validate(fam.n);
        fam.matchings.push_back(std::move(m));
    }
    for (const auto& s : j.at("good_sets")) fam.good_sets.push_back(s.get<std::vector<int>>());
    fam.crossing_count = crossing_count(fam.n, fam.d);
    return fam;
}

inline json poly_to_json(const MultiPoly& p) {
    json j;
    j["n"] = p.n();
    j["degree"] = p.degree();
    json terms = json::array();
    for (const auto& [exps, coef] : p.terms()) {
        json t;
        t["exp"] = exps;
        t["coef"] = to_string(coef);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline MultiPoly poly_from_json(const json& j) {
    MultiPoly p(j.at("n").get<int>(), j.at("degree").get<int>());
    for (const auto& t : j.at("terms"))
        p.add_term(t.at("exp").get<std::vector<int>>(),
                   parse_rational(t.at("coef").get<std::string>()));
    return p;
}

/// Matrices serialize row-major; exact reps write "p/q" strings, float reps
/// write numbers. Reading accepts either per entry and keeps an exact
/// mirror when every entry was a string.
inline json rep_to_json(const SpectraRep& rep) {
    json j;
    j["n"] = rep.n;
    j["k"] = rep.k;
    json mats = json::array();
    for (int i = 0; i < rep.n; ++i) {
        json m = json::array();
        if (rep.exact) {
            for (const Rational& v : (*rep.exact)[i]) m.push_back(to_string(v));
        } else {
            for (int r = 0; r < rep.k; ++r)
                for (int c = 0; c < rep.k; ++c) m.push_back(rep.mats[i](r, c));
        }
        mats.push_back(std::move(m));
    }
    j["mats"] = std::move(mats);
    j["normalized"] = rep.normalized;
    return j;
}

inline SpectraRep rep_from_json(const json& j) {
    SpectraRep rep;
    rep.n = j.at("n").get<int>();
    rep.k = j.at("k").get<int>();
    rep.normalized = j.at("normalized").get<bool>();
    const auto& mats = j.at("mats");
    if (static_cast<int>(mats.size()) != rep.n)
        throw std::invalid_argument("rep_from_json: expected n matrices");
    bool all_exact = true;
    for (const auto& m : mats)
        for (const auto& v : m)
            if (!v.is_string()) all_exact = false;
    if (all_exact) rep.exact.emplace();
    for (const auto& m : mats) {
        if (static_cast<int>(m.size()) != rep.k * rep.k)
            throw std::invalid_argument("rep_from_json: matrix entry count mismatch");
        Eigen::MatrixXd mat(rep.k, rep.k);
        std::vector<Rational> ex;
        for (int r = 0; r < rep.k; ++r) {
            for (int c = 0; c < rep.k; ++c) {
                const auto& v = m[static_cast<std::size_t>(r) * rep.k + c];
                if (v.is_string()) {
                    const Rational q = parse_rational(v.get<std::string>());
                    mat(r, c) = q.convert_to<double>();
                    if (all_exact) ex.push_back(q);
                } else {
                    mat(r, c) = v.get<double>();
                }
            }
        }
        rep.mats.push_back(std::move(mat));
        if (all_exact) rep.exact->push_back(std::move(ex));
    }
    rep.validate();
    return rep;
}

inline json interval_to_json(const RatInterval& iv) {
    json j;
    j["lo"] = to_string(iv.lo);
    j["hi"] = to_string(iv.hi);
    j["lo_f"] = iv.lo.convert_to<double>();
    j["hi_f"] = iv.hi.convert_to<double>();
    return j;
}

inline json logpair_to_json(const LogPair& lp) {
    json j;
    j["lo"] = lp.lo;
    j["hi"] = lp.hi;
    return j;
}

inline json chain_to_json(const BoundChain& chain) {
    json j;
    j["n"] = chain.n;
    j["d"] = chain.d;
    j["B"] = chain.b;
    j["family_size"] = chain.family_size;
    json entries = json::array();
    for (const ChainEntry& e : chain.entries) {
        json je;
        je["name"] = e.name;
        je["source"] = e.source;
        if (e.has_exact) {
            je["exact"] = to_string(e.exact);
            je["exact_log2"] = e.exact_log2;
        }
        je["log2"] = logpair_to_json(e.composed);
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    j["packing_count_log2"] = logpair_to_json(chain.packing_count_log2);
    j["b_min"] = chain.b_min;
    j["headline_exponent_log2"] = chain.headline_exponent_log2;
    j["family_exceeds_packing"] = chain.family_exceeds_packing;
    j["floor_ge_gamma"] = chain.floor_ge_gamma;
    j["log2_consistency_rel_err"] = chain.max_rel_err;
    j["log2_consistent"] = chain.consistent;
    return j;
}

/// Standard report envelope: operation name, full parameter echo, content
/// hash of the parameters (and any input files the caller folds in), and
/// the norm convention used for distances.
inline json make_report(const std::string& op, json params, json body) {
    json j;
    j["op"] = op;
    j["input_sha1"] = sha1_hex(params.dump());
    j["params"] = std::move(params);
    j["norm_convention"] = "l2";
    j["report"] = std::move(body);
    return j;
}

}  // namespace hypcone
