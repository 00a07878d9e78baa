#pragma once

#include "congr/numeric.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace congr {

/// Letters of the free monoid on s1, s2 and their inverses.
enum class Letter : std::uint8_t { S1, S1inv, S2, S2inv };

inline Letter inverse(Letter l) {
    switch (l) {
        case Letter::S1: return Letter::S1inv;
        case Letter::S1inv: return Letter::S1;
        case Letter::S2: return Letter::S2inv;
        case Letter::S2inv: return Letter::S2;
    }
    fail(errc::unknown_symbol, "inverse: bad letter");
}

inline const char* letter_name(Letter l) {
    switch (l) {
        case Letter::S1: return "s1";
        case Letter::S1inv: return "s1'";
        case Letter::S2: return "s2";
        case Letter::S2inv: return "s2'";
    }
    fail(errc::unknown_symbol, "letter_name: bad letter");
}

/// Freely reduced word over {s1, s2, s1^-1, s2^-1}; reduction is maintained
/// on every push, so Words compare as elements of the free group F(s1, s2).
class Word {
  public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) {
        for (Letter l : letters) push(l);
    }

    static Word one() { return Word(); }
    static Word s1() { return Word({Letter::S1}); }
    static Word s2() { return Word({Letter::S2}); }

    void push(Letter l) {
        if (!letters_.empty() && letters_.back() == congr::inverse(l))
            letters_.pop_back();
        else
            letters_.push_back(l);
    }

    Word operator*(const Word& o) const {
        Word w = *this;
        for (Letter l : o.letters_) w.push(l);
        return w;
    }

    Word inverse() const {
        Word w;
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            w.letters_.push_back(congr::inverse(*it));
        return w;
    }

    Word pow(long e) const {
        Word base = e >= 0 ? *this : inverse();
        long n = e >= 0 ? e : -e;
        Word w;
        for (long i = 0; i < n; ++i) w = w * base;
        return w;
    }

    bool empty() const { return letters_.empty(); }
    std::size_t size() const { return letters_.size(); }
    const std::vector<Letter>& letters() const { return letters_; }

    bool operator==(const Word& o) const { return letters_ == o.letters_; }
    bool operator!=(const Word& o) const { return !(*this == o); }
    bool operator<(const Word& o) const { return letters_ < o.letters_; }

    std::string to_string() const {
        if (letters_.empty()) return "1";
        std::string s;
        for (Letter l : letters_) {
            if (!s.empty()) s += '.';
            s += letter_name(l);
        }
        return s;
    }

    static Word parse(const std::string& text) {
        Word w;
        if (text == "1" || text.empty()) return w;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t next = text.find('.', pos);
            std::string tok =
                text.substr(pos, next == std::string::npos ? next : next - pos);
            if (tok == "s1")
                w.push(Letter::S1);
            else if (tok == "s1'")
                w.push(Letter::S1inv);
            else if (tok == "s2")
                w.push(Letter::S2);
            else if (tok == "s2'")
                w.push(Letter::S2inv);
            else
                fail(errc::unknown_symbol, "Word::parse: bad token '" + tok + "'");
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        return w;
    }

  private:
    std::vector<Letter> letters_;
};

}  // namespace congr
