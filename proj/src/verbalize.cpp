#include "kgiqa/verbalize.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "kgiqa/errors.hpp"
#include "kgiqa/rng.hpp"
#include "kgiqa/text.hpp"

namespace kgiqa::verbalize {

namespace {

bool valid_template(std::string_view t) {
    const auto count = [&](std::string_view slot) {
        std::size_t n = 0, pos = 0;
        while ((pos = t.find(slot, pos)) != std::string_view::npos) {
            ++n;
            pos += slot.size();
        }
        return n;
    };
    return count("{head}") == 1 && count("{tail}") == 1;
}

// "HasContext" -> "has context"
std::string camel_split_lower(std::string_view relation) {
    std::string out;
    for (std::size_t i = 0; i < relation.size(); ++i) {
        const char c = relation[i];
        if (std::isupper(static_cast<unsigned char>(c))) {
            if (i > 0 && out.back() != ' ') out.push_back(' ');
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (c == '/' || c == '_') {
            if (!out.empty() && out.back() != ' ') out.push_back(' ');
        } else {
            out.push_back(c);
        }
    }
    return out;
}

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
    return s;
}

// Runs of underscores become the placeholder token.
std::string fill_blanks(std::string_view s) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '_') {
            while (i < s.size() && s[i] == '_') ++i;
            out += "something";
        } else {
            out.push_back(s[i++]);
        }
    }
    return out;
}

std::string_view atomic_template(kgstore::AtomicRelation r) {
    using R = kgstore::AtomicRelation;
    switch (r) {
        case R::xIntent: return "{event} because {x} wanted {tail}.";
        case R::xNeed: return "{event} but before, {x} needed {tail}.";
        case R::xAttr: return "{event} so {x} is seen as {tail}.";
        case R::xEffect: return "{event} and as a result, {x} {tail}.";
        case R::xWant: return "{event} and as a result, {x} wants {tail}.";
        case R::xReact: return "{event} and as a result, {x} feels {tail}.";
        case R::oEffect: return "{event} and as a result, others {tail}.";
        case R::oWant: return "{event} and as a result, others want {tail}.";
        case R::oReact: return "{event} and as a result, others feel {tail}.";
    }
    return "{event}, {tail}.";
}

}  // namespace

// ---------------------------------------------------------------------------
// TemplateTable
// ---------------------------------------------------------------------------

TemplateTable TemplateTable::builtin() {
    TemplateTable t;
    const std::pair<const char*, const char*> entries[] = {
        {"RelatedTo", "{head} is related to {tail}."},
        {"FormOf", "{head} is a form of {tail}."},
        {"IsA", "{head} is a {tail}."},
        {"PartOf", "{head} is part of {tail}."},
        {"HasA", "{head} has {tail}."},
        {"UsedFor", "{head} is used for {tail}."},
        {"CapableOf", "{head} is capable of {tail}."},
        {"AtLocation", "{head} can be found at {tail}."},
        {"Causes", "{head} causes {tail}."},
        {"HasSubevent", "{head} involves {tail}."},
        {"HasFirstSubevent", "{head} begins with {tail}."},
        {"HasLastSubevent", "{head} ends with {tail}."},
        {"HasPrerequisite", "{head} requires {tail}."},
        {"HasProperty", "{head} is {tail}."},
        {"MotivatedByGoal", "{head} is motivated by {tail}."},
        {"ObstructedBy", "{head} is obstructed by {tail}."},
        {"Desires", "{head} desires {tail}."},
        {"CreatedBy", "{head} is created by {tail}."},
        {"Synonym", "{head} is a synonym of {tail}."},
        {"Antonym", "{head} is the opposite of {tail}."},
        {"DistinctFrom", "{head} is distinct from {tail}."},
        {"DerivedFrom", "{head} is derived from {tail}."},
        {"SymbolOf", "{head} is a symbol of {tail}."},
        {"DefinedAs", "{head} is defined as {tail}."},
        {"MannerOf", "{head} is a manner of {tail}."},
        {"LocatedNear", "{head} is located near {tail}."},
        {"HasContext", "{head} is a word used in the context of {tail}."},
        {"SimilarTo", "{head} is similar to {tail}."},
        {"EtymologicallyRelatedTo", "{head} is etymologically related to {tail}."},
        {"EtymologicallyDerivedFrom", "{head} is etymologically derived from {tail}."},
        {"CausesDesire", "{head} makes people want {tail}."},
        {"MadeOf", "{head} is made of {tail}."},
        {"ReceivesAction", "{head} can be {tail}."},
        {"InstanceOf", "{head} is an instance of {tail}."},
        {"NotDesires", "{head} does not desire {tail}."},
        {"NotCapableOf", "{head} is not capable of {tail}."},
        {"NotHasProperty", "{head} is not {tail}."},
        {"Entails", "{head} entails {tail}."},
    };
    for (const auto& [rel, tmpl] : entries) t.set(rel, tmpl);
    return t;
}

TemplateTable TemplateTable::load(std::istream& in) {
    TemplateTable t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw DataError("template table line " + std::to_string(lineno) + ": missing tab");
        t.set(line.substr(0, tab), line.substr(tab + 1));
    }
    return t;
}

void TemplateTable::set(std::string relation, std::string tmpl) {
    if (!valid_template(tmpl))
        throw DataError("template for '" + relation +
                        "' must contain {head} and {tail} exactly once");
    templates_[std::move(relation)] = std::move(tmpl);
}

const std::string* TemplateTable::find(std::string_view relation) const {
    const auto it = templates_.find(relation);
    return it == templates_.end() ? nullptr : &it->second;
}

VerbalizedTuple verbalize_tuple(const kgstore::KgTuple& t, const TemplateTable& templates) {
    std::string tmpl;
    if (const std::string* found = templates.find(t.relation)) {
        tmpl = *found;
    } else {
        tmpl = "{head}, " + camel_split_lower(t.relation) + ", {tail}.";
    }
    VerbalizedTuple out;
    out.tuple_id = t.id;

    const std::size_t head_slot = tmpl.find("{head}");
    const std::size_t tail_slot = tmpl.find("{tail}");
    // instantiate in slot order so spans stay consistent
    if (head_slot < tail_slot) {
        out.txt = tmpl.substr(0, head_slot) + t.head;
        out.head_begin = head_slot;
        out.head_end = out.txt.size();
        const std::string mid = tmpl.substr(head_slot + 6, tail_slot - head_slot - 6);
        out.txt += mid;
        out.tail_begin = out.txt.size();
        out.txt += t.tail;
        out.tail_end = out.txt.size();
        out.txt += tmpl.substr(tail_slot + 6);
    } else {
        out.txt = tmpl.substr(0, tail_slot) + t.tail;
        out.tail_begin = tail_slot;
        out.tail_end = out.txt.size();
        const std::string mid = tmpl.substr(tail_slot + 6, head_slot - tail_slot - 6);
        out.txt += mid;
        out.head_begin = out.txt.size();
        out.txt += t.head;
        out.head_end = out.txt.size();
        out.txt += tmpl.substr(head_slot + 6);
    }
    return out;
}

// ---------------------------------------------------------------------------
// ATOMIC
// ---------------------------------------------------------------------------

const std::vector<std::string>& default_surnames() {
    static const std::vector<std::string> names = {
        "Smith",  "Johnson",  "Williams", "Brown",    "Jones",
        "Garcia", "Miller",   "Davis",    "Rodriguez","Martinez",
        "Hernandez", "Lopez", "Gonzalez", "Wilson",   "Anderson",
        "Thomas", "Taylor",   "Moore",    "Jackson",  "Martin"};
    return names;
}

std::string verbalize_atomic(const kgstore::AtomicEvent& e,
                             const std::vector<std::string>& names, std::uint64_t seed) {
    if (names.size() < 2)
        throw ConfigError("verbalize_atomic: need at least two surnames");
    const std::uint64_t h = fnv1a(e.event, fnv1a_u64(seed));
    const std::size_t i = h % names.size();
    const std::size_t j = (i + 1 + (h >> 32) % (names.size() - 1)) % names.size();

    const auto substitute = [&](std::string_view s) {
        std::string r = replace_all(std::string(s), "PersonX", names[i]);
        r = replace_all(std::move(r), "PersonY", names[j]);
        return fill_blanks(r);
    };

    std::string event = substitute(e.event);
    while (!event.empty() && (event.back() == '.' || event.back() == ' ')) event.pop_back();
    std::string tail = substitute(e.tail);
    while (!tail.empty() && tail.back() == '.') tail.pop_back();

    std::string out(atomic_template(e.relation_type));
    out = replace_all(std::move(out), "{event}", event);
    out = replace_all(std::move(out), "{x}", names[i]);
    out = replace_all(std::move(out), "{tail}", tail);
    return out;
}

// ---------------------------------------------------------------------------
// Vocab
// ---------------------------------------------------------------------------

Vocab::Vocab() {
    for (const char* s : {"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"}) add(s);
}

Vocab Vocab::build(const std::vector<std::string>& texts) {
    Vocab v;
    for (const auto& txt : texts)
        for (const auto& tok : text::tokenize(txt)) v.add(text::to_lower(tok.surface));
    return v;
}

std::uint32_t Vocab::add(std::string_view token) {
    const auto it = ids_.find(std::string(token));
    if (it != ids_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(tokens_.size());
    tokens_.emplace_back(token);
    ids_.emplace(tokens_.back(), id);
    return id;
}

std::uint32_t Vocab::id(std::string_view token) const {
    const auto it = ids_.find(std::string(token));
    return it == ids_.end() ? kUnk : it->second;
}

const std::string& Vocab::token(std::uint32_t id) const { return tokens_.at(id); }

std::vector<std::uint32_t> Vocab::encode(std::string_view txt) const {
    std::vector<std::uint32_t> out;
    for (const auto& tok : text::tokenize(txt)) out.push_back(id(text::to_lower(tok.surface)));
    return out;
}

void Vocab::save(std::ostream& out) const {
    for (const auto& t : tokens_) out << t << '\n';
}

Vocab Vocab::load(std::istream& in) {
    Vocab v;
    std::string line;
    std::size_t i = 0;
    while (std::getline(in, line)) {
        if (i >= kFirstRegular) v.add(line);
        ++i;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Masking
// ---------------------------------------------------------------------------

std::vector<MaskedExample> build_kg_pretrain_corpus(const std::vector<VerbalizedTuple>& texts,
                                                    const Vocab& vocab, std::uint64_t seed,
                                                    CorpusStats* stats) {
    CorpusStats local;
    std::vector<MaskedExample> out;
    out.reserve(texts.size());
    for (const auto& vt : texts) {
        Rng rng = stream_rng(seed, vt.tuple_id);
        const bool mask_head = rng.coin();
        const std::size_t span_begin = mask_head ? vt.head_begin : vt.tail_begin;
        const std::size_t span_end = mask_head ? vt.head_end : vt.tail_end;
        if (mask_head)
            ++local.head_masked;
        else
            ++local.tail_masked;

        MaskedExample ex;
        ex.meta = "kg-pretrain";
        ex.tokens.push_back(Vocab::kCls);
        bool aligned_begin = false, aligned_end = false;
        for (const auto& tok : text::tokenize(vt.txt)) {
            const std::uint32_t tid = vocab.id(text::to_lower(tok.surface));
            const std::size_t pos = ex.tokens.size();
            const bool overlaps = tok.begin < span_end && tok.end > span_begin;
            if (overlaps) {
                if (tok.begin == span_begin) aligned_begin = true;
                if (tok.end == span_end) aligned_end = true;
                ex.mask_positions.push_back(pos);
                ex.labels.push_back(tid);
                ex.tokens.push_back(Vocab::kMask);
            } else {
                ex.tokens.push_back(tid);
            }
        }
        ex.tokens.push_back(Vocab::kSep);
        if (!ex.mask_positions.empty() && (!aligned_begin || !aligned_end))
            ++local.misaligned_spans;
        out.push_back(std::move(ex));
    }
    if (stats) *stats = local;
    return out;
}

MaskedExample mask_tokens(const std::vector<std::uint32_t>& tokens, double rate,
                          std::uint64_t rng_seed, const Vocab& vocab) {
    if (!(rate >= 0.0 && rate <= 1.0))
        throw ConfigError("mask_tokens: rate must be in [0,1]");
    Rng rng(rng_seed);
    MaskedExample ex;
    ex.meta = "task-mlm";
    ex.tokens = tokens;
    const auto regular_count = static_cast<std::uint32_t>(vocab.size()) - Vocab::kFirstRegular;
    for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
        if (Vocab::is_special(tokens[pos])) continue;
        if (rng.uniform() >= rate) continue;
        ex.mask_positions.push_back(pos);
        ex.labels.push_back(tokens[pos]);
        const double treat = rng.uniform();
        if (treat < 0.8) {
            ex.tokens[pos] = Vocab::kMask;
        } else if (treat < 0.9 && regular_count > 0) {
            ex.tokens[pos] =
                Vocab::kFirstRegular + static_cast<std::uint32_t>(rng.below(regular_count));
        }  // else keep the original token
    }
    return ex;
}

// ---------------------------------------------------------------------------
// Corpus file
// ---------------------------------------------------------------------------

void save_corpus(std::ostream& out, const std::vector<MaskedExample>& examples,
                 const std::vector<std::string>& texts) {
    if (!texts.empty() && texts.size() != examples.size())
        throw ConfigError("save_corpus: texts/examples length mismatch");
    for (std::size_t i = 0; i < examples.size(); ++i) {
        const auto& ex = examples[i];
        nlohmann::json j;
        j["text"] = texts.empty() ? "" : texts[i];
        j["tokens"] = ex.tokens;
        j["mask_positions"] = ex.mask_positions;
        j["labels"] = ex.labels;
        j["meta"] = ex.meta;
        out << j.dump() << '\n';
    }
    if (!out) throw DataError("corpus write failure");
}

std::vector<MaskedExample> load_corpus(std::istream& in) {
    std::vector<MaskedExample> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw DataError("corpus: malformed record");
        MaskedExample ex;
        ex.tokens = j["tokens"].get<std::vector<std::uint32_t>>();
        ex.mask_positions = j["mask_positions"].get<std::vector<std::size_t>>();
        ex.labels = j["labels"].get<std::vector<std::uint32_t>>();
        ex.meta = j["meta"].get<std::string>();
        out.push_back(std::move(ex));
    }
    return out;
}

}  // namespace kgiqa::verbalize
