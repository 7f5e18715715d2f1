// Free group F2: reduced words, group operations, retractions, cyclic reduction.
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcoh {

enum class Gen : std::uint8_t { a = 0, b = 1 };

struct Letter {
    Gen gen;
    int sign;  // +1 or -1

    Letter inverse() const { return Letter{gen, -sign}; }
    bool operator==(const Letter& o) const = default;
};

inline bool is_inverse_pair(const Letter& x, const Letter& y) {
    return x.gen == y.gen && x.sign == -y.sign;
}

// Freely reduced word in F2.  Empty = identity.  Construction always reduces.
class Word {
public:
    Word() = default;

    static Word reduce(const std::vector<Letter>& raw) {
        Word w;
        for (const Letter& l : raw) w.push_reduced(l);
        return w;
    }

    static Word letter(Letter l) {
        Word w;
        w.letters_.push_back(l);
        return w;
    }

    // Textual syntax: a A b B, uppercase = inverse.  "" or "e" is the identity.
    static Word parse(const std::string& s) {
        if (s == "e") return Word{};
        std::vector<Letter> raw;
        raw.reserve(s.size());
        for (char c : s) {
            switch (c) {
                case 'a': raw.push_back({Gen::a, +1}); break;
                case 'A': raw.push_back({Gen::a, -1}); break;
                case 'b': raw.push_back({Gen::b, +1}); break;
                case 'B': raw.push_back({Gen::b, -1}); break;
                default:
                    throw std::invalid_argument("Word::parse: bad letter '" +
                                                std::string(1, c) + "'");
            }
        }
        return reduce(raw);
    }

    std::string str() const {
        if (letters_.empty()) return "e";
        std::string s;
        s.reserve(letters_.size());
        for (const Letter& l : letters_) {
            char c = (l.gen == Gen::a) ? 'a' : 'b';
            if (l.sign < 0) c = static_cast<char>(c - 'a' + 'A');
            s.push_back(c);
        }
        return s;
    }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    bool operator==(const Word& o) const = default;

    void push_reduced(const Letter& l) {
        if (!letters_.empty() && is_inverse_pair(letters_.back(), l))
            letters_.pop_back();
        else
            letters_.push_back(l);
    }

private:
    std::vector<Letter> letters_;
};

// Group law.  u*v means "apply v first, then u"; on reduced words this is
// concatenation u followed by v, then free reduction.
inline Word multiply(const Word& u, const Word& v) {
    Word w = u;
    for (const Letter& l : v.letters()) w.push_reduced(l);
    return w;
}

inline Word invert(const Word& w) {
    Word r;
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
        r.push_reduced(it->inverse());
    return r;
}

inline Word conjugate(const Word& u, const Word& w) {  // u w u^-1
    return multiply(multiply(u, w), invert(u));
}

// Retraction h_a (onto == Gen::a) kills every b-letter, h_b kills every a-letter.
inline Word retract(const Word& w, Gen onto) {
    Word r;
    for (const Letter& l : w.letters())
        if (l.gen == onto) r.push_reduced(l);
    return r;
}

// w = conjugator * core * conjugator^-1 with core cyclically reduced.
inline std::pair<Word, Word> cyclically_reduce(const Word& w) {
    std::vector<Letter> core = w.letters();
    std::vector<Letter> conj;
    while (core.size() >= 2 && is_inverse_pair(core.front(), core.back())) {
        conj.push_back(core.front());
        core.erase(core.begin());
        core.pop_back();
    }
    return {Word::reduce(core), Word::reduce(conj)};
}

inline Word pow(const Word& w, int n) {
    Word r;
    Word base = (n < 0) ? invert(w) : w;
    int k = (n < 0) ? -n : n;
    for (int i = 0; i < k; ++i) r = multiply(r, base);
    return r;
}

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 1469598103934665603ull;
        for (const Letter& l : w.letters()) {
            std::size_t v = static_cast<std::size_t>(l.gen) * 2 +
                            (l.sign > 0 ? 0 : 1);
            h = (h ^ (v + 0x9e3779b97f4a7c15ull)) * 1099511628211ull;
        }
        return h;
    }
};

}  // namespace bcoh
