#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace curvecount {

// Conjugacy classes in the rank-2 free group on a, b, as cyclic words over
// {a, A, b, B} (capitals are inverses).  Curves are unoriented, so canonical
// forms also quotient by global inversion.

inline bool is_letter(char c) { return c == 'a' || c == 'A' || c == 'b' || c == 'B'; }
inline char inverse_letter(char c) {
    switch (c) {
        case 'a': return 'A';
        case 'A': return 'a';
        case 'b': return 'B';
        case 'B': return 'b';
    }
    throw std::domain_error("bad letter");
}

inline std::string invert_word(const std::string& w) {
    std::string out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse_letter(*it));
    return out;
}

// Free reduction (delete adjacent inverse pairs).
inline std::string free_reduce(const std::string& w) {
    std::string out;
    for (char c : w) {
        if (!is_letter(c)) throw std::domain_error("word contains a non-letter");
        if (!out.empty() && out.back() == inverse_letter(c))
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

// Cyclic reduction: also cancel across the wrap.
inline std::string cyclic_reduce(std::string w) {
    w = free_reduce(w);
    while (w.size() >= 2 && w.front() == inverse_letter(w.back())) {
        w = w.substr(1, w.size() - 2);
        w = free_reduce(w);
    }
    return w;
}

// Letter order a < b < A < B, so canonical forms prefer positive letters.
inline int letter_rank(char c) {
    switch (c) {
        case 'a': return 0;
        case 'b': return 1;
        case 'A': return 2;
        case 'B': return 3;
    }
    throw std::domain_error("bad letter");
}

inline bool word_less(const std::string& u, const std::string& v) {
    size_t n = std::min(u.size(), v.size());
    for (size_t i = 0; i < n; ++i) {
        int ru = letter_rank(u[i]), rv = letter_rank(v[i]);
        if (ru != rv) return ru < rv;
    }
    return u.size() < v.size();
}

inline std::string least_rotation(const std::string& w) {
    if (w.empty()) return w;
    std::string best = w;
    std::string cur = w;
    for (size_t i = 1; i < w.size(); ++i) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (word_less(cur, best)) best = cur;
    }
    return best;
}

class CyclicWord {
  public:
    // Canonical representative: cyclic reduction, then the lexicographically
    // least rotation, minimized over global inversion.
    static CyclicWord canonicalize(const std::string& raw) {
        std::string w = cyclic_reduce(raw);
        if (w.empty()) throw std::domain_error("trivial class has no cyclic word");
        std::string r1 = least_rotation(w);
        std::string r2 = least_rotation(invert_word(w));
        CyclicWord out;
        out.letters_ = word_less(r2, r1) ? r2 : r1;
        return out;
    }

    const std::string& str() const { return letters_; }
    size_t length() const { return letters_.size(); }

    bool operator==(const CyclicWord&) const = default;
    auto operator<=>(const CyclicWord&) const = default;

    // Not a proper power of a shorter cyclic word.
    bool primitive() const {
        size_t n = letters_.size();
        for (size_t d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            bool periodic = true;
            for (size_t i = d; i < n && periodic; ++i)
                if (letters_[i] != letters_[i - d]) periodic = false;
            if (periodic) return false;
        }
        return true;
    }

    // (exponent sum of a, exponent sum of b)
    std::pair<std::int64_t, std::int64_t> homology() const {
        std::int64_t p = 0, q = 0;
        for (char c : letters_) {
            if (c == 'a') ++p;
            if (c == 'A') --p;
            if (c == 'b') ++q;
            if (c == 'B') --q;
        }
        return {p, q};
    }

    // Conjugate to a power of the commutator (the puncture class).
    bool peripheral() const {
        size_t n = letters_.size();
        if (n % 4 != 0) return false;
        size_t k = n / 4;
        std::string commutator_power;
        for (size_t i = 0; i < k; ++i) commutator_power += "abAB";
        return *this == canonicalize(commutator_power);
    }

  private:
    std::string letters_;
};

inline bool word_primitive(const std::string& canonical) {
    size_t n = canonical.size();
    for (size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (size_t i = d; i < n && periodic; ++i)
            if (canonical[i] != canonical[i - d]) periodic = false;
        if (periodic) return false;
    }
    return true;
}

// A mapping class as a word in three generator moves, with the induced
// integer matrix on homology (columns are the images of a and b).
//   T: a -> ab, b -> b        homology [[1,0],[1,1]]
//   S: a -> b,  b -> a^-1     homology [[0,-1],[1,0]]
//   I: a -> a^-1, b -> b      homology [[-1,0],[0,1]]
class MappingClass {
  public:
    enum class Move : char { T = 'T', Tinv = 't', S = 'S', I = 'I' };

    MappingClass() = default;
    explicit MappingClass(const std::string& moves) {
        for (char c : moves) {
            switch (c) {
                case 'T': moves_.push_back(Move::T); break;
                case 't': moves_.push_back(Move::Tinv); break;
                case 'S': moves_.push_back(Move::S); break;
                case 'I': moves_.push_back(Move::I); break;
                default: throw std::domain_error("bad mapping class move");
            }
        }
    }

    static MappingClass identity() { return MappingClass(); }

    // Composition: (phi * psi) acts as phi after psi.
    MappingClass operator*(const MappingClass& o) const {
        MappingClass out = o;
        out.moves_.insert(out.moves_.end(), moves_.begin(), moves_.end());
        return out;
    }

    // Image of a single letter under one move.
    static std::string move_image(Move m, char letter) {
        auto img = [&](const char* ia, const char* ib) -> std::string {
            switch (letter) {
                case 'a': return ia;
                case 'b': return ib;
                case 'A': return invert_word(ia);
                case 'B': return invert_word(ib);
            }
            throw std::domain_error("bad letter");
        };
        switch (m) {
            case Move::T: return img("ab", "b");
            case Move::Tinv: return img("aB", "b");
            case Move::S: return img("b", "A");
            case Move::I: return img("A", "b");
        }
        throw std::domain_error("bad move");
    }

    // Apply to a raw (not necessarily canonical) word, move by move; the
    // composition convention is left-to-right: the first move acts first.
    std::string apply_raw(std::string w) const {
        for (Move m : moves_) {
            std::string next;
            for (char c : w) next += move_image(m, c);
            w = free_reduce(next);
        }
        return w;
    }

    CyclicWord apply(const CyclicWord& w) const { return CyclicWord::canonicalize(apply_raw(w.str())); }

    // Induced matrix on homology, det +-1; column-vector convention.
    std::array<std::int64_t, 4> homology_matrix() const {
        std::array<std::int64_t, 4> m{1, 0, 0, 1};  // (m00 m01; m10 m11)
        for (Move mv : moves_) {
            std::array<std::int64_t, 4> g{};
            switch (mv) {
                case Move::T: g = {1, 0, 1, 1}; break;
                case Move::Tinv: g = {1, 0, -1, 1}; break;
                case Move::S: g = {0, -1, 1, 0}; break;
                case Move::I: g = {-1, 0, 0, 1}; break;
            }
            // later move acts after: new = g * m
            m = {g[0] * m[0] + g[1] * m[2], g[0] * m[1] + g[1] * m[3],
                 g[2] * m[0] + g[3] * m[2], g[2] * m[1] + g[3] * m[3]};
        }
        return m;
    }

    const std::vector<Move>& moves() const { return moves_; }

  private:
    std::vector<Move> moves_;
};

// The primitive word of a coprime slope: the simple class with homology
// (p, q), built by Stern-Brocot mediant descent (lower Christoffel word,
// a = step right, b = step up).  Sign convention: normalize to q > 0, or
// q == 0 and p > 0; negative p uses inverted a-letters.  Output canonical.
inline CyclicWord christoffel(std::int64_t p, std::int64_t q) {
    if (p == 0 && q == 0) throw std::domain_error("christoffel needs a nonzero slope");
    if (std::gcd(std::abs(p), std::abs(q)) != 1)
        throw std::domain_error("christoffel needs a coprime slope");
    if (q < 0 || (q == 0 && p < 0)) { p = -p; q = -q; }
    bool flip_a = p < 0;
    std::int64_t pp = std::abs(p), qq = q;

    std::string w;
    if (pp == 0) {
        w = "b";
    } else if (qq == 0) {
        w = "a";
    } else {
        // mediant walk from (1,0)"a", (0,1)"b" to (pp,qq)
        std::int64_t lp = 1, lq = 0, rp = 0, rq = 1;
        std::string lw = "a", rw = "b";
        for (;;) {
            std::int64_t mp = lp + rp, mq = lq + rq;
            std::string mw = lw + rw;
            if (mp == pp && mq == qq) { w = mw; break; }
            // target slope qq/pp vs mediant slope mq/mp
            if ((__int128)qq * mp < (__int128)mq * pp) {
                rp = mp; rq = mq; rw = mw;  // target below mediant
            } else {
                lp = mp; lq = mq; lw = mw;
            }
        }
    }
    if (flip_a) {
        std::string flipped;
        for (char c : w) flipped.push_back(c == 'a' ? 'A' : (c == 'A' ? 'a' : c));
        w = flipped;
    }
    return CyclicWord::canonicalize(w);
}

}  // namespace curvecount
