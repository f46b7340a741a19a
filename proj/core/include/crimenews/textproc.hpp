#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace crimenews::textproc {

struct Token {
    std::string text;      // lowercase term
    std::string original;  // surface form after NFKC
    std::size_t position = 0;

    friend bool operator==(const Token&, const Token&) = default;
};

/// NFKC-normalizes `text`, then splits on runs of non-alphanumeric code
/// points. An apostrophe (straight or curly) between two alphanumerics stays
/// inside the token and is emitted as "'" in the lowercase field.
std::vector<Token> tokenize(std::string_view text);

/// Like tokenize, but every punctuation code point also becomes its own
/// token. Used where sentence boundaries matter.
std::vector<Token> tokenize_with_punct(std::string_view text);

/// Lowercase term texts of tokenize(text).
std::vector<std::string> terms(std::string_view text);

std::string to_lower(std::string_view text);

bool is_punct_token(const Token& token);

using Stoplist = std::unordered_set<std::string>;

Stoplist load_stoplist(std::span<const std::string> words);
/// The bundled English stoplist.
const Stoplist& default_stoplist();

std::vector<Token> remove_stopwords(std::vector<Token> tokens, const Stoplist& stoplist);
std::vector<std::string> remove_stopwords(std::vector<std::string> terms, const Stoplist& stoplist);

std::map<std::string, std::size_t> term_counts(std::span<const Token> tokens);
std::map<std::string, std::size_t> term_counts(std::span<const std::string> terms);

/// Matches dictionary stems against a lowercase term sequence. A stem matches
/// when it is a prefix of a term; a multi-word stem ("missing person") matches
/// when each of its words is a prefix of consecutive terms.
class PrefixMatcher {
public:
    PrefixMatcher() = default;
    explicit PrefixMatcher(std::span<const std::string> stems);

    std::size_t size() const noexcept { return stems_.size(); }
    const std::vector<std::string>& stems() const noexcept { return stems_; }

    /// Indices of matched stems, ascending and distinct.
    std::vector<std::size_t> match(std::span<const std::string> terms) const;

private:
    std::vector<std::string> stems_;
    std::vector<std::vector<std::string>> words_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_first_word_;
    std::vector<std::size_t> first_word_lengths_;
};

}  // namespace crimenews::textproc
