#pragma once

// Minimal unicode handling for Spanish/English coursework text: UTF-8
// decoding, targeted Latin composition (base letter + combining mark ->
// precomposed), lowercasing and diacritic folding to ASCII. Full Unicode
// normalization is out of scope; the tables below cover Latin-1 Supplement,
// Latin Extended-A and the combining marks that occur in practice.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cohort_audit {

inline constexpr char32_t kReplacementChar = 0xFFFD;

// Decodes one UTF-8 sequence starting at `i`; advances `i` past it.
// Invalid sequences decode to U+FFFD and advance one byte.
inline char32_t utf8_next(std::string_view s, std::size_t& i) {
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    auto cont = [&](std::size_t k) {
        return k < s.size() && (byte(k) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(i + 1)) {
        char32_t cp = (char32_t(b0 & 0x1F) << 6) | (byte(i + 1) & 0x3F);
        i += 2;
        return cp < 0x80 ? kReplacementChar : cp;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(i + 1) && cont(i + 2)) {
        char32_t cp = (char32_t(b0 & 0x0F) << 12) | (char32_t(byte(i + 1) & 0x3F) << 6) |
                      (byte(i + 2) & 0x3F);
        i += 3;
        return cp < 0x800 ? kReplacementChar : cp;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
        char32_t cp = (char32_t(b0 & 0x07) << 18) | (char32_t(byte(i + 1) & 0x3F) << 12) |
                      (char32_t(byte(i + 2) & 0x3F) << 6) | (byte(i + 3) & 0x3F);
        i += 4;
        return (cp < 0x10000 || cp > 0x10FFFF) ? kReplacementChar : cp;
    }
    ++i;
    return kReplacementChar;
}

inline void utf8_append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline bool is_combining_mark(char32_t cp) { return cp >= 0x0300 && cp <= 0x036F; }

// Composes base + combining mark into the precomposed Latin codepoint.
// Returns 0 when no composition is known.
inline char32_t compose_latin(char32_t base, char32_t mark) {
    struct Row {
        char base;
        char32_t grave, acute, circ, tilde, diaeresis;
    };
    static constexpr Row kRows[] = {
        {'a', 0xE0, 0xE1, 0xE2, 0xE3, 0xE4}, {'e', 0xE8, 0xE9, 0xEA, 0, 0xEB},
        {'i', 0xEC, 0xED, 0xEE, 0, 0xEF},    {'o', 0xF2, 0xF3, 0xF4, 0xF5, 0xF6},
        {'u', 0xF9, 0xFA, 0xFB, 0, 0xFC},    {'n', 0, 0x144, 0, 0xF1, 0},
        {'y', 0, 0xFD, 0, 0, 0xFF},          {'A', 0xC0, 0xC1, 0xC2, 0xC3, 0xC4},
        {'E', 0xC8, 0xC9, 0xCA, 0, 0xCB},    {'I', 0xCC, 0xCD, 0xCE, 0, 0xCF},
        {'O', 0xD2, 0xD3, 0xD4, 0xD5, 0xD6}, {'U', 0xD9, 0xDA, 0xDB, 0, 0xDC},
        {'N', 0, 0x143, 0, 0xD1, 0},         {'Y', 0, 0xDD, 0, 0, 0x178},
    };
    for (const auto& r : kRows) {
        if (char32_t(r.base) != base) continue;
        switch (mark) {
            case 0x0300: return r.grave;
            case 0x0301: return r.acute;
            case 0x0302: return r.circ;
            case 0x0303: return r.tilde;
            case 0x0308: return r.diaeresis;
            default: return 0;
        }
    }
    if (mark == 0x0327 && (base == 'c' || base == 'C')) return base == 'c' ? 0xE7 : 0xC7;
    if (mark == 0x030A && (base == 'a' || base == 'A')) return base == 'a' ? 0xE5 : 0xC5;
    return 0;
}

// ASCII base letter(s) for an accented Latin codepoint; empty when the
// codepoint has no fold (it is already ASCII or outside the tables).
inline std::string_view diacritic_base(char32_t cp) {
    switch (cp) {
        case 0xC0: case 0xC1: case 0xC2: case 0xC3: case 0xC4: case 0xC5:
        case 0xE0: case 0xE1: case 0xE2: case 0xE3: case 0xE4: case 0xE5:
            return "a";
        case 0xC6: case 0xE6: return "ae";
        case 0xC7: case 0xE7: return "c";
        case 0xC8: case 0xC9: case 0xCA: case 0xCB:
        case 0xE8: case 0xE9: case 0xEA: case 0xEB:
            return "e";
        case 0xCC: case 0xCD: case 0xCE: case 0xCF:
        case 0xEC: case 0xED: case 0xEE: case 0xEF:
            return "i";
        case 0xD0: case 0xF0: return "d";
        case 0xD1: case 0xF1: return "n";
        case 0xD2: case 0xD3: case 0xD4: case 0xD5: case 0xD6: case 0xD8:
        case 0xF2: case 0xF3: case 0xF4: case 0xF5: case 0xF6: case 0xF8:
            return "o";
        case 0xD9: case 0xDA: case 0xDB: case 0xDC:
        case 0xF9: case 0xFA: case 0xFB: case 0xFC:
            return "u";
        case 0xDD: case 0xFD: case 0xFF: case 0x178: return "y";
        case 0xDF: return "ss";
        case 0x152: case 0x153: return "oe";
        default: break;
    }
    if (cp >= 0x0100 && cp <= 0x017F) {
        if (cp <= 0x0105) return "a";
        if (cp <= 0x010D) return "c";
        if (cp <= 0x0111) return "d";
        if (cp <= 0x011B) return "e";
        if (cp <= 0x0123) return "g";
        if (cp <= 0x0127) return "h";
        if (cp <= 0x0131) return "i";
        if (cp <= 0x0133) return "ij";
        if (cp <= 0x0135) return "j";
        if (cp <= 0x0138) return "k";
        if (cp <= 0x0142) return "l";
        if (cp <= 0x0149) return "n";
        if (cp <= 0x014B) return "n";
        if (cp <= 0x0151) return "o";
        if (cp <= 0x0159) return "r";
        if (cp <= 0x0161) return "s";
        if (cp <= 0x0167) return "t";
        if (cp <= 0x0173) return "u";
        if (cp <= 0x0175) return "w";
        if (cp <= 0x0177) return "y";
        if (cp <= 0x017E) return "z";
        return "s";  // U+017F long s
    }
    return {};
}

// Simple lowercase: ASCII, Latin-1 and the regular Latin Extended-A pairs.
inline char32_t to_lower(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
    if (cp == 0x178) return 0xFF;
    if (cp >= 0x0100 && cp <= 0x017E) {
        if (cp >= 0x0139 && cp <= 0x0148) return (cp % 2 == 1) ? cp + 1 : cp;
        if (cp >= 0x0179 && cp <= 0x017E) return (cp % 2 == 1) ? cp + 1 : cp;
        return (cp % 2 == 0) ? cp + 1 : cp;
    }
    return cp;
}

// Letters and digits for tokenization / word boundaries. Latin letters
// (plain and accented) and ASCII digits count as word characters.
inline bool is_word_char(char32_t cp) {
    if ((cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z'))
        return true;
    if (cp >= 0xC0 && cp <= 0x024F && cp != 0xD7 && cp != 0xF7) return true;
    return false;
}

// Lowercased (and optionally diacritic-folded) copy of a string together
// with a byte-offset map back into the original. src[i] is the byte offset
// in the original text of the character that produced output byte i.
struct FoldedText {
    std::string text;
    std::vector<std::size_t> src;
    std::size_t original_size = 0;

    std::size_t to_original(std::size_t folded_pos) const {
        return folded_pos < src.size() ? src[folded_pos] : original_size;
    }
};

inline FoldedText fold_text(std::string_view input, bool fold_diacritics) {
    FoldedText out;
    out.original_size = input.size();
    out.text.reserve(input.size());
    out.src.reserve(input.size());

    const auto emit = [&](char32_t cp, std::size_t at) {
        std::size_t before = out.text.size();
        utf8_append(out.text, cp);
        for (std::size_t k = before; k < out.text.size(); ++k) out.src.push_back(at);
    };
    const auto emit_cp = [&](char32_t cp, std::size_t at) {
        cp = to_lower(cp);
        if (fold_diacritics) {
            std::string_view base = diacritic_base(cp);
            if (!base.empty()) {
                for (char c : base) {
                    out.text.push_back(c);
                    out.src.push_back(at);
                }
                return;
            }
        }
        emit(cp, at);
    };

    std::size_t i = 0;
    bool pending = false;
    char32_t pending_cp = 0;
    std::size_t pending_at = 0;
    while (i < input.size()) {
        std::size_t at = i;
        char32_t cp = utf8_next(input, i);
        if (pending && is_combining_mark(cp)) {
            if (char32_t composed = compose_latin(pending_cp, cp)) {
                pending_cp = composed;
                continue;  // mark consumed; keep the (possibly longer) pending run open
            }
            if (fold_diacritics) continue;  // unknown mark: drop when folding
        }
        if (pending) emit_cp(pending_cp, pending_at);
        pending = true;
        pending_cp = cp;
        pending_at = at;
    }
    if (pending) emit_cp(pending_cp, pending_at);
    return out;
}

// Convenience: folded text without the offset map.
inline std::string fold_string(std::string_view input, bool fold_diacritics = true) {
    return fold_text(input, fold_diacritics).text;
}

}  // namespace cohort_audit
