#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crimenews/textproc.hpp"

namespace crimenews::entities {

enum class Tag { ProperCandidate, Word, Number, DateWord, Punct };

std::string_view to_string(Tag tag);

struct TaggedToken {
    std::string word;  // surface form
    Tag tag = Tag::Word;
    bool sentence_initial = false;

    friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

/// Tags tokens from textproc::tokenize_with_punct. Capitalized words become
/// ProperCandidate unless they open a sentence; digit strings are Number;
/// capitalized month and weekday names are DateWord.
std::vector<TaggedToken> tag_tokens(std::span<const textproc::Token> tokens);
std::vector<TaggedToken> tag_text(std::string_view text);

enum class Label { PERSON, ORG, GPE, DATE, OTHER };

std::string_view to_string(Label label);

struct Entity {
    std::string text;
    Label label = Label::OTHER;
    std::size_t start = 0;  // token index, inclusive
    std::size_t end = 0;    // token index, exclusive

    friend bool operator==(const Entity&, const Entity&) = default;
};

/// Name lists used for labeling. Entries are matched case-insensitively on
/// whole spans; keywords and titles on single words.
struct Gazetteers {
    std::set<std::string> gpe;
    std::set<std::string> org;
    std::set<std::string> org_keywords;
    std::set<std::string> person_titles;

    void add(Label label, std::string_view entry);
    void add_org_keyword(std::string_view word);
    void add_person_title(std::string_view word);
};

/// The bundled lists (U.S. states and large cities, countries, agencies and
/// groups, organization keywords, personal titles).
Gazetteers default_gazetteers();

/// Reads gpe.txt, org.txt, org_keywords.txt and person_titles.txt from `dir`;
/// a missing file leaves that list empty.
Gazetteers load_gazetteers(const std::filesystem::path& dir);

/// Merges runs of ProperCandidate tokens into spans labeled GPE, then ORG,
/// then PERSON (after a title word), else OTHER. Runs of DateWord/Number
/// containing a DateWord become DATE. A capitalized sentence-initial word only
/// joins a span when the whole span is a gazetteer entry or it is a title.
std::vector<Entity> extract_entities(std::span<const TaggedToken> tagged, const Gazetteers& gazetteers);

std::vector<Entity> extract_entities(std::string_view text, const Gazetteers& gazetteers);

/// [{"text":..,"label":..,"start":..,"end":..}, ...]
std::string to_json(std::span<const Entity> entities);

}  // namespace crimenews::entities
