#include "crimenews/textproc.hpp"

#include <algorithm>
#include <set>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "crimenews/error.hpp"
#include "crimenews/io.hpp"

namespace crimenews::textproc {
namespace {

constexpr UChar32 kRightQuote = 0x2019;

icu::UnicodeString normalize_nfkc(std::string_view text) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfkc = icu::Normalizer2::getNFKCInstance(status);
    if (U_FAILURE(status)) raise(ErrorCode::Io, "ICU NFKC normalizer unavailable");
    icu::UnicodeString source = icu::UnicodeString::fromUTF8(
        icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
    icu::UnicodeString normalized = nfkc->normalize(source, status);
    if (U_FAILURE(status)) raise(ErrorCode::MalformedValue, "text could not be normalized");
    return normalized;
}

bool is_word_char(UChar32 c) {
    return u_isalnum(c) || (U_GET_GC_MASK(c) & U_GC_M_MASK) != 0;
}

bool is_apostrophe(UChar32 c) { return c == '\'' || c == kRightQuote; }

std::string utf8(const icu::UnicodeString& s) {
    std::string out;
    s.toUTF8String(out);
    return out;
}

std::vector<Token> scan(std::string_view text, bool keep_punct) {
    const icu::UnicodeString norm = normalize_nfkc(text);
    std::vector<Token> tokens;
    const int32_t n = norm.length();

    auto code_point_at = [&](int32_t i) { return norm.char32At(i); };
    auto next_index = [&](int32_t i) { return norm.moveIndex32(i, 1); };

    int32_t i = 0;
    while (i < n) {
        UChar32 c = code_point_at(i);
        if (is_word_char(c)) {
            icu::UnicodeString lower;
            const int32_t start = i;
            while (i < n) {
                c = code_point_at(i);
                if (is_word_char(c)) {
                    lower.append(static_cast<UChar32>(u_tolower(c)));
                    i = next_index(i);
                } else if (is_apostrophe(c)) {
                    const int32_t after = next_index(i);
                    if (after < n && is_word_char(code_point_at(after))) {
                        lower.append(static_cast<UChar32>('\''));
                        i = after;
                    } else {
                        break;
                    }
                } else {
                    break;
                }
            }
            Token token;
            token.text = utf8(lower);
            token.original = utf8(norm.tempSubString(start, i - start));
            token.position = tokens.size();
            tokens.push_back(std::move(token));
            continue;
        }
        const int32_t next = next_index(i);
        if (keep_punct && !u_isUWhiteSpace(c) && !u_iscntrl(c)) {
            Token token;
            token.original = utf8(norm.tempSubString(i, next - i));
            token.text = token.original;
            token.position = tokens.size();
            tokens.push_back(std::move(token));
        }
        i = next;
    }
    return tokens;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) { return scan(text, false); }

std::vector<Token> tokenize_with_punct(std::string_view text) { return scan(text, true); }

std::vector<std::string> terms(std::string_view text) {
    auto tokens = tokenize(text);
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (auto& t : tokens) out.push_back(std::move(t.text));
    return out;
}

std::string to_lower(std::string_view text) {
    icu::UnicodeString s = icu::UnicodeString::fromUTF8(
        icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
    icu::UnicodeString lower;
    for (int32_t i = 0; i < s.length(); i = s.moveIndex32(i, 1)) {
        lower.append(static_cast<UChar32>(u_tolower(s.char32At(i))));
    }
    return utf8(lower);
}

bool is_punct_token(const Token& token) {
    if (token.original.empty()) return false;
    icu::UnicodeString s = icu::UnicodeString::fromUTF8(token.original);
    return !is_word_char(s.char32At(0));
}

Stoplist load_stoplist(std::span<const std::string> words) {
    Stoplist out;
    for (const auto& w : words) out.insert(to_lower(w));
    return out;
}

const Stoplist& default_stoplist() {
    static const Stoplist list = [] {
        const auto words = io::parse_word_list(io::bundled("stoplist.txt"));
        return load_stoplist(words);
    }();
    return list;
}

std::vector<Token> remove_stopwords(std::vector<Token> tokens, const Stoplist& stoplist) {
    std::erase_if(tokens, [&](const Token& t) { return stoplist.contains(t.text); });
    return tokens;
}

std::vector<std::string> remove_stopwords(std::vector<std::string> terms, const Stoplist& stoplist) {
    std::erase_if(terms, [&](const std::string& t) { return stoplist.contains(t); });
    return terms;
}

std::map<std::string, std::size_t> term_counts(std::span<const Token> tokens) {
    std::map<std::string, std::size_t> counts;
    for (const auto& t : tokens) ++counts[t.text];
    return counts;
}

std::map<std::string, std::size_t> term_counts(std::span<const std::string> terms) {
    std::map<std::string, std::size_t> counts;
    for (const auto& t : terms) ++counts[t];
    return counts;
}

PrefixMatcher::PrefixMatcher(std::span<const std::string> stems) {
    std::set<std::size_t> lengths;
    for (const auto& raw : stems) {
        std::vector<std::string> words;
        for (auto& t : tokenize(raw)) words.push_back(std::move(t.text));
        if (words.empty()) raise(ErrorCode::InvalidArgument, "empty stem '" + raw + "'");
        std::string joined;
        for (const auto& w : words) joined += (joined.empty() ? "" : " ") + w;
        if (std::find(stems_.begin(), stems_.end(), joined) != stems_.end()) continue;
        const std::size_t id = stems_.size();
        stems_.push_back(joined);
        lengths.insert(words.front().size());
        by_first_word_[words.front()].push_back(id);
        words_.push_back(std::move(words));
    }
    first_word_lengths_.assign(lengths.begin(), lengths.end());
}

std::vector<std::size_t> PrefixMatcher::match(std::span<const std::string> terms) const {
    std::vector<char> hit(stems_.size(), 0);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string& term = terms[i];
        for (std::size_t len : first_word_lengths_) {
            if (len > term.size()) break;
            auto it = by_first_word_.find(term.substr(0, len));
            if (it == by_first_word_.end()) continue;
            for (std::size_t id : it->second) {
                if (hit[id]) continue;
                const auto& words = words_[id];
                if (i + words.size() > terms.size()) continue;
                bool ok = true;
                for (std::size_t w = 1; w < words.size() && ok; ++w) {
                    ok = terms[i + w].starts_with(words[w]);
                }
                if (ok) hit[id] = 1;
            }
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t id = 0; id < hit.size(); ++id) {
        if (hit[id]) out.push_back(id);
    }
    return out;
}

}  // namespace crimenews::textproc
