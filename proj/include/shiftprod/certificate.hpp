#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shiftprod/digest.hpp"
#include "shiftprod/errors.hpp"
#include "shiftprod/setfile.hpp"
#include "shiftprod/witness.hpp"

// Self-contained witness certificates: canonical JSON plus an independent
// checker that re-derives every entry from (r, k, x) using only integer
// arithmetic and raw membership queries. The checker shares no code with
// the pipeline that produced the certificate.

namespace shiftprod {

inline constexpr std::uint32_t kCertificateVersion = 1;
/// Checker-side cap on r; keeps the FS-range scan bounded.
inline constexpr std::uint64_t kMaxCertificateRank = 30;

struct SetDescriptor {
    enum class Kind { setfile, primes_diff };

    Kind kind = Kind::setfile;
    std::uint64_t hi = 0;
    std::uint64_t prime_limit = 0;  // meaningful only for primes_diff
    std::string sha256;             // digest of the serialized set file

    static SetDescriptor for_set(const IntSet& s) {
        return SetDescriptor{Kind::setfile, s.hi(), 0, set_digest(s)};
    }

    static SetDescriptor for_primes_diff(std::uint64_t prime_limit, const IntSet& generated) {
        return SetDescriptor{Kind::primes_diff, generated.hi(), prime_limit, set_digest(generated)};
    }
};

struct CertificateEntry {
    std::uint64_t x, p, a, b;
};

struct Certificate {
    std::uint32_t version = kCertificateVersion;
    std::uint64_t r = 0;
    std::uint64_t k = 0;
    std::uint64_t x_max = 0;
    SetDescriptor set_a;
    SetDescriptor set_b;
    std::vector<CertificateEntry> entries;
};

/// Builds a certificate from an internally verified pipeline result.
inline Certificate emit(const WitnessResult& result, SetDescriptor a_desc, SetDescriptor b_desc) {
    Certificate cert;
    cert.r = result.selector.r;
    cert.k = result.k;
    cert.x_max = result.x_max;
    cert.set_a = std::move(a_desc);
    cert.set_b = std::move(b_desc);
    cert.entries.reserve(static_cast<std::size_t>(result.x_max));
    for (std::uint64_t x = 1; x <= result.x_max; ++x) {
        const std::uint64_t p = result.selector.p(x);
        cert.entries.push_back(CertificateEntry{x, p, result.k / p, x * p});
    }
    return cert;
}

// --- canonical serialization ------------------------------------------------

namespace detail {

inline nlohmann::json descriptor_to_json(const SetDescriptor& d) {
    nlohmann::json j;
    j["hi"] = d.hi;
    j["kind"] = d.kind == SetDescriptor::Kind::setfile ? "setfile" : "primes-diff";
    if (d.kind == SetDescriptor::Kind::primes_diff) {
        j["prime_limit"] = d.prime_limit;
    }
    j["sha256"] = d.sha256;
    return j;
}

inline std::uint64_t require_uint(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_unsigned()) {
        throw MalformedInput(std::string("certificate field \"") + key +
                             "\" missing or not an unsigned integer");
    }
    return j.at(key).get<std::uint64_t>();
}

inline SetDescriptor descriptor_from_json(const nlohmann::json& j, const char* which) {
    if (!j.is_object()) {
        throw MalformedInput(std::string("set descriptor ") + which + " is not an object");
    }
    SetDescriptor d;
    d.hi = require_uint(j, "hi");
    if (!j.contains("kind") || !j.at("kind").is_string()) {
        throw MalformedInput("set descriptor kind missing");
    }
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "setfile") {
        d.kind = SetDescriptor::Kind::setfile;
    } else if (kind == "primes-diff") {
        d.kind = SetDescriptor::Kind::primes_diff;
        d.prime_limit = require_uint(j, "prime_limit");
    } else {
        throw MalformedInput("unknown set descriptor kind \"" + kind + "\"");
    }
    if (!j.contains("sha256") || !j.at("sha256").is_string()) {
        throw MalformedInput("set descriptor sha256 missing");
    }
    d.sha256 = j.at("sha256").get<std::string>();
    return d;
}

}  // namespace detail

/// Canonical form: UTF-8 JSON, keys sorted lexicographically, integers
/// unquoted, no whitespace, no floats. Entries are [x, p, a, b] rows in
/// ascending x. Certificates compare and digest byte-for-byte.
inline std::string canonical_json(const Certificate& cert) {
    nlohmann::json j;
    nlohmann::json entries = nlohmann::json::array();
    for (const CertificateEntry& e : cert.entries) {
        entries.push_back(nlohmann::json::array({e.x, e.p, e.a, e.b}));
    }
    j["entries"] = std::move(entries);
    j["k"] = cert.k;
    j["r"] = cert.r;
    j["set_a"] = detail::descriptor_to_json(cert.set_a);
    j["set_b"] = detail::descriptor_to_json(cert.set_b);
    j["version"] = cert.version;
    j["x_max"] = cert.x_max;
    return j.dump();
}

inline Certificate parse_certificate(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw MalformedInput("certificate is not a JSON object");
    }
    Certificate cert;
    const std::uint64_t version = detail::require_uint(j, "version");
    if (version > std::numeric_limits<std::uint32_t>::max()) {
        throw MalformedInput("certificate version out of range");
    }
    cert.version = static_cast<std::uint32_t>(version);
    cert.r = detail::require_uint(j, "r");
    cert.k = detail::require_uint(j, "k");
    cert.x_max = detail::require_uint(j, "x_max");
    if (!j.contains("set_a") || !j.contains("set_b")) {
        throw MalformedInput("certificate set descriptors missing");
    }
    cert.set_a = detail::descriptor_from_json(j.at("set_a"), "set_a");
    cert.set_b = detail::descriptor_from_json(j.at("set_b"), "set_b");
    if (!j.contains("entries") || !j.at("entries").is_array()) {
        throw MalformedInput("certificate entries missing");
    }
    for (const auto& row : j.at("entries")) {
        if (!row.is_array() || row.size() != 4) {
            throw MalformedInput("certificate entry is not a [x, p, a, b] row");
        }
        CertificateEntry e{};
        std::uint64_t* fields[4] = {&e.x, &e.p, &e.a, &e.b};
        for (std::size_t i = 0; i < 4; ++i) {
            if (!row[i].is_number_unsigned()) {
                throw MalformedInput("certificate entry field is not an unsigned integer");
            }
            *fields[i] = row[i].get<std::uint64_t>();
        }
        cert.entries.push_back(e);
    }
    return cert;
}

// --- independent checking ---------------------------------------------------

/// Raw membership interface the checker consumes. hi is the largest value
/// the oracle can answer for; queries beyond it are an error, not a verdict.
struct MembershipOracle {
    std::uint64_t hi = 0;
    std::function<bool(std::uint64_t)> contains;
};

/// Wraps a set as an oracle (shares ownership; the set outlives the oracle).
inline MembershipOracle oracle_from(IntSet s) {
    auto held = std::make_shared<const IntSet>(std::move(s));
    return MembershipOracle{held->hi(), [held](std::uint64_t x) { return held->contains(x); }};
}

struct CheckVerdict {
    bool accepted = false;
    std::string clause;                      // violated clause when rejected
    std::optional<std::uint64_t> entry_x;    // entry (by its x) when applicable
    std::string detail;

    static CheckVerdict accept() { return CheckVerdict{true, {}, std::nullopt, {}}; }
    static CheckVerdict reject(std::string clause_name, std::optional<std::uint64_t> x,
                               std::string info) {
        return CheckVerdict{false, std::move(clause_name), x, std::move(info)};
    }
};

/// Validates a certificate against raw membership oracles. Performs no
/// search and builds no sets: every entry is recomputed from (r, k, x) and
/// cross-checked, then resolved through the oracles. Single pass, linear
/// in X_max.
inline CheckVerdict check(const Certificate& cert, const MembershipOracle& a_oracle,
                          const MembershipOracle& b_oracle) {
    const auto query = [](const MembershipOracle& o, const char* which, std::uint64_t v) {
        if (v > o.hi) {
            throw OracleWindowInsufficient(which, v, o.hi);
        }
        return o.contains(v);
    };

    if (cert.version != kCertificateVersion) {
        return CheckVerdict::reject("version", std::nullopt,
                                    "unsupported version " + std::to_string(cert.version));
    }
    if (cert.r < 1 || cert.r > kMaxCertificateRank) {
        return CheckVerdict::reject("r range", std::nullopt, "r = " + std::to_string(cert.r));
    }
    if (cert.k < 1) {
        return CheckVerdict::reject("k range", std::nullopt, "k = 0");
    }
    if (cert.x_max < 1) {
        return CheckVerdict::reject("x_max range", std::nullopt, "x_max = 0");
    }
    if (cert.entries.size() != cert.x_max) {
        return CheckVerdict::reject("entry count", std::nullopt,
                                    std::to_string(cert.entries.size()) + " entries for x_max = " +
                                        std::to_string(cert.x_max));
    }

    // k ∈ A ∩ ⋂ m·A: the K-membership the construction rests on. This is
    // what makes r semantically binding in the certificate.
    const std::uint64_t fs_top = cert.r * (cert.r + 1) / 2;
    for (std::uint64_t m = 1; m <= fs_top; ++m) {
        if (cert.k % m != 0) {
            return CheckVerdict::reject("k divisible by FS range", std::nullopt,
                                        "m = " + std::to_string(m) + " does not divide k");
        }
        if (!query(a_oracle, "A", cert.k / m)) {
            return CheckVerdict::reject("k/m in A", std::nullopt,
                                        "k/" + std::to_string(m) + " = " +
                                            std::to_string(cert.k / m) + " not in A");
        }
    }

    for (std::size_t i = 0; i < cert.entries.size(); ++i) {
        const CertificateEntry& e = cert.entries[i];
        const std::uint64_t expected_x = i + 1;
        if (e.x != expected_x) {
            return CheckVerdict::reject("x sequence", expected_x,
                                        "entry " + std::to_string(i) + " has x = " +
                                            std::to_string(e.x));
        }
        if (e.p < 1 || e.p > fs_top) {
            return CheckVerdict::reject("p in FS range", e.x, "p = " + std::to_string(e.p));
        }
        if (cert.k % e.p != 0) {
            return CheckVerdict::reject("p divides k", e.x, "p = " + std::to_string(e.p));
        }
        if (e.a != cert.k / e.p) {
            return CheckVerdict::reject("a = k/p", e.x,
                                        "stored a = " + std::to_string(e.a) + ", recomputed " +
                                            std::to_string(cert.k / e.p));
        }
        std::uint64_t xp = 0;
        if (__builtin_mul_overflow(e.x, e.p, &xp) || e.b != xp) {
            return CheckVerdict::reject("b = x*p", e.x, "stored b = " + std::to_string(e.b));
        }
        std::uint64_t ab = 0, kx = 0;
        if (__builtin_mul_overflow(e.a, e.b, &ab) || __builtin_mul_overflow(cert.k, e.x, &kx) ||
            ab != kx) {
            return CheckVerdict::reject("a*b = k*x", e.x, "identity fails");
        }
        if (!query(a_oracle, "A", e.a)) {
            return CheckVerdict::reject("a in A", e.x, "a = " + std::to_string(e.a));
        }
        if (!query(b_oracle, "B", e.b)) {
            return CheckVerdict::reject("b in B", e.x, "b = " + std::to_string(e.b));
        }
    }
    return CheckVerdict::accept();
}

// --- file layer ---------------------------------------------------------

/// Writes path (canonical JSON) and path + ".sha256" (sha256sum format).
inline void write_certificate_files(const Certificate& cert, const std::filesystem::path& path) {
    const std::string body = canonical_json(cert);
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open " + path.string() + " for writing");
        }
        out << body;
        if (!out) {
            throw Error("write failed: " + path.string());
        }
    }
    std::filesystem::path digest_path = path;
    digest_path += ".sha256";
    std::ofstream out(digest_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open " + digest_path.string() + " for writing");
    }
    out << sha256_hex(body) << "  " << path.filename().string() << "\n";
}

struct LoadedCertificate {
    Certificate cert;
    bool digest_ok = false;
    std::string expected_digest;
    std::string actual_digest;
};

/// Loads a certificate and validates its companion digest file. A missing
/// digest file is a malformed input; a mismatching digest is reported for
/// the caller to turn into a rejection.
inline LoadedCertificate load_certificate_files(const std::filesystem::path& path) {
    const std::vector<unsigned char> bytes = read_file_bytes(path);
    const std::string body(bytes.begin(), bytes.end());

    std::filesystem::path digest_path = path;
    digest_path += ".sha256";
    if (!std::filesystem::exists(digest_path)) {
        throw MalformedInput("digest file missing: " + digest_path.string());
    }
    const std::vector<unsigned char> digest_bytes = read_file_bytes(digest_path);
    std::string digest_text(digest_bytes.begin(), digest_bytes.end());
    const std::size_t cut = digest_text.find_first_of(" \t\r\n");
    if (cut != std::string::npos) {
        digest_text.resize(cut);
    }
    if (digest_text.size() != 64) {
        throw MalformedInput("digest file does not hold a SHA-256 hex digest");
    }

    LoadedCertificate loaded;
    loaded.expected_digest = digest_text;
    loaded.actual_digest = sha256_hex(body);
    loaded.digest_ok = loaded.expected_digest == loaded.actual_digest;
    if (loaded.digest_ok) {
        loaded.cert = parse_certificate(body);
    }
    return loaded;
}

}  // namespace shiftprod
