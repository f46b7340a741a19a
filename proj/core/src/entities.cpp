#include "crimenews/entities.hpp"

#include <algorithm>
#include <optional>

#include <json.hpp>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "crimenews/error.hpp"
#include "crimenews/io.hpp"

namespace crimenews::entities {
namespace {

const std::set<std::string>& date_words() {
    static const std::set<std::string> words = {
        "january", "february", "march",  "april",    "may",    "june",     "july",    "august",
        "september", "october", "november", "december", "monday", "tuesday", "wednesday", "thursday",
        "friday",  "saturday", "sunday"};
    return words;
}

// A period after one of these does not end the sentence.
const std::set<std::string>& abbreviations() {
    static const std::set<std::string> words = {"mr",  "mrs", "ms",  "dr",  "st",  "sen", "rep", "gov", "lt",
                                                "sgt", "capt", "jr", "sr",  "inc", "corp", "no", "vs",  "gen",
                                                "col", "mt",  "ft",  "prof", "det"};
    return words;
}

bool is_capitalized(std::string_view word) {
    if (word.empty()) return false;
    icu::UnicodeString s = icu::UnicodeString::fromUTF8(icu::StringPiece(word.data(), static_cast<int32_t>(word.size())));
    return u_isupper(s.char32At(0)) || u_istitle(s.char32At(0));
}

bool is_all_digits(std::string_view word) {
    icu::UnicodeString s = icu::UnicodeString::fromUTF8(icu::StringPiece(word.data(), static_cast<int32_t>(word.size())));
    if (s.isEmpty()) return false;
    for (int32_t i = 0; i < s.length(); i = s.moveIndex32(i, 1)) {
        if (!u_isdigit(s.char32At(i))) return false;
    }
    return true;
}

std::string normalize_key(std::string_view entry) {
    std::string key;
    for (const auto& t : textproc::terms(entry)) key += (key.empty() ? "" : " ") + t;
    return key;
}

std::string span_key(std::span<const TaggedToken> span) {
    std::string key;
    for (const auto& t : span) key += (key.empty() ? "" : " ") + textproc::to_lower(t.word);
    return key;
}

std::string span_text(std::span<const TaggedToken> span) {
    std::string text;
    for (const auto& t : span) text += (text.empty() ? "" : " ") + t.word;
    return text;
}

bool is_title(const Gazetteers& g, const TaggedToken& t) { return g.person_titles.contains(textproc::to_lower(t.word)); }

std::optional<Label> gazetteer_label(const Gazetteers& g, std::span<const TaggedToken> span) {
    const auto key = span_key(span);
    if (g.gpe.contains(key)) return Label::GPE;
    if (g.org.contains(key)) return Label::ORG;
    return std::nullopt;
}

// Labels a span of proper-candidate tokens. Returns false when the span
// should not become an entity.
bool label_span(const Gazetteers& g, std::span<const TaggedToken> span, bool after_title, std::size_t& offset,
                Label& label) {
    offset = 0;
    if (auto hit = gazetteer_label(g, span)) {
        label = *hit;
        return true;
    }
    if (is_title(g, span.front())) {
        if (span.size() == 1) return false;
        after_title = true;
        offset = 1;
        span = span.subspan(1);
        if (auto hit = gazetteer_label(g, span)) {
            label = *hit;
            return true;
        }
    }
    for (const auto& t : span) {
        if (g.org_keywords.contains(textproc::to_lower(t.word))) {
            label = Label::ORG;
            return true;
        }
    }
    label = after_title ? Label::PERSON : Label::OTHER;
    return true;
}

void add_lines(std::set<std::string>& target, std::string_view text) {
    for (const auto& line : io::parse_word_list(text)) {
        auto key = normalize_key(line);
        if (!key.empty()) target.insert(std::move(key));
    }
}

}  // namespace

std::string_view to_string(Tag tag) {
    switch (tag) {
        case Tag::ProperCandidate: return "ProperCandidate";
        case Tag::Word: return "Word";
        case Tag::Number: return "Number";
        case Tag::DateWord: return "DateWord";
        case Tag::Punct: return "Punct";
    }
    return "Word";
}

std::string_view to_string(Label label) {
    switch (label) {
        case Label::PERSON: return "PERSON";
        case Label::ORG: return "ORG";
        case Label::GPE: return "GPE";
        case Label::DATE: return "DATE";
        case Label::OTHER: return "OTHER";
    }
    return "OTHER";
}

std::vector<TaggedToken> tag_tokens(std::span<const textproc::Token> tokens) {
    std::vector<TaggedToken> out;
    out.reserve(tokens.size());
    bool sentence_start = true;
    std::string previous_word;
    for (const auto& tok : tokens) {
        TaggedToken t;
        t.word = tok.original;
        if (textproc::is_punct_token(tok)) {
            t.tag = Tag::Punct;
            if (tok.original == "!" || tok.original == "?" ||
                (tok.original == "." && previous_word.size() > 1 && !abbreviations().contains(previous_word))) {
                sentence_start = true;
            }
            out.push_back(std::move(t));
            continue;
        }
        t.sentence_initial = sentence_start;
        sentence_start = false;
        previous_word = tok.text;
        if (is_all_digits(tok.original)) {
            t.tag = Tag::Number;
        } else if (is_capitalized(tok.original) && date_words().contains(tok.text)) {
            t.tag = Tag::DateWord;
        } else if (is_capitalized(tok.original) && !t.sentence_initial) {
            t.tag = Tag::ProperCandidate;
        } else {
            t.tag = Tag::Word;
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<TaggedToken> tag_text(std::string_view text) { return tag_tokens(textproc::tokenize_with_punct(text)); }

void Gazetteers::add(Label label, std::string_view entry) {
    auto key = normalize_key(entry);
    if (key.empty()) return;
    if (label == Label::GPE) gpe.insert(std::move(key));
    else if (label == Label::ORG) org.insert(std::move(key));
    else raise(ErrorCode::InvalidArgument, "gazetteers hold only GPE and ORG names");
}

void Gazetteers::add_org_keyword(std::string_view word) { org_keywords.insert(textproc::to_lower(io::trim(word))); }

void Gazetteers::add_person_title(std::string_view word) { person_titles.insert(textproc::to_lower(io::trim(word))); }

Gazetteers default_gazetteers() {
    Gazetteers g;
    add_lines(g.gpe, io::bundled("gazetteer/gpe.txt"));
    add_lines(g.org, io::bundled("gazetteer/org.txt"));
    add_lines(g.org_keywords, io::bundled("gazetteer/org_keywords.txt"));
    add_lines(g.person_titles, io::bundled("gazetteer/person_titles.txt"));
    return g;
}

Gazetteers load_gazetteers(const std::filesystem::path& dir) {
    Gazetteers g;
    auto load = [&](std::set<std::string>& target, const char* name) {
        const auto path = dir / name;
        if (std::filesystem::exists(path)) add_lines(target, io::read_text(path));
    };
    load(g.gpe, "gpe.txt");
    load(g.org, "org.txt");
    load(g.org_keywords, "org_keywords.txt");
    load(g.person_titles, "person_titles.txt");
    return g;
}

std::vector<Entity> extract_entities(std::span<const TaggedToken> tagged, const Gazetteers& g) {
    std::vector<Entity> out;
    const std::size_t n = tagged.size();
    std::size_t i = 0;
    while (i < n) {
        const auto& t = tagged[i];
        if (t.tag == Tag::DateWord || t.tag == Tag::Number) {
            std::size_t j = i;
            bool has_date_word = false;
            while (j < n && (tagged[j].tag == Tag::DateWord || tagged[j].tag == Tag::Number)) {
                has_date_word |= tagged[j].tag == Tag::DateWord;
                ++j;
            }
            if (has_date_word) out.push_back({span_text(tagged.subspan(i, j - i)), Label::DATE, i, j});
            i = j;
            continue;
        }
        const bool opens_sentence = t.tag == Tag::Word && t.sentence_initial && is_capitalized(t.word);
        if (t.tag != Tag::ProperCandidate && !opens_sentence) {
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j < n && tagged[j].tag == Tag::ProperCandidate) ++j;
        auto run = tagged.subspan(i, j - i);
        // "Mr Smith" or "Mr. Smith".
        bool after_title = i > 0 && tagged[i - 1].tag != Tag::Punct && is_title(g, tagged[i - 1]);
        if (!after_title && i > 1 && tagged[i - 1].word == "." && is_title(g, tagged[i - 2])) after_title = true;

        std::size_t start = i;
        if (opens_sentence) {
            if (auto hit = gazetteer_label(g, run)) {
                out.push_back({span_text(run), *hit, i, j});
                i = j;
                continue;
            }
            if (!is_title(g, run.front())) {
                // Sentence case is not evidence of a name; drop the first word.
                run = run.subspan(1);
                start = i + 1;
                if (run.empty()) {
                    i = j;
                    continue;
                }
            }
        }
        std::size_t offset = 0;
        Label label = Label::OTHER;
        if (label_span(g, run, after_title, offset, label)) {
            const auto kept = run.subspan(offset);
            out.push_back({span_text(kept), label, start + offset, j});
        }
        i = j;
    }
    return out;
}

std::vector<Entity> extract_entities(std::string_view text, const Gazetteers& gazetteers) {
    const auto tagged = tag_text(text);
    return extract_entities(tagged, gazetteers);
}

std::string to_json(std::span<const Entity> entities) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& e : entities) {
        list.push_back({{"text", e.text}, {"label", std::string(to_string(e.label))}, {"start", e.start}, {"end", e.end}});
    }
    return list.dump();
}

}  // namespace crimenews::entities
