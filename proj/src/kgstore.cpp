#include "kgiqa/kgstore.hpp"

#include <array>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "kgiqa/errors.hpp"
#include "kgiqa/text.hpp"

namespace kgiqa::kgstore {

namespace {

constexpr std::array<std::string_view, 9> kAtomicNames = {
    "oEffect", "oReact", "oWant", "xAttr", "xEffect", "xIntent", "xNeed", "xReact", "xWant"};

constexpr char kIndexMagic[] = "KGIDX001";

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find('\t', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string percent_decode(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '%' && i + 2 < s.size() && std::isxdigit((unsigned char)s[i + 1]) &&
            std::isxdigit((unsigned char)s[i + 2])) {
            const auto hex = [](char c) {
                return c <= '9' ? c - '0' : (std::tolower((unsigned char)c) - 'a' + 10);
            };
            out.push_back(static_cast<char>(hex(s[i + 1]) * 16 + hex(s[i + 2])));
            i += 2;
        } else {
            out.push_back(s[i]);
        }
    }
    return out;
}

// "/c/en/hot_dog/n/wikt/..." -> stripped language + term segment
struct ConceptUri {
    std::string language;
    std::string term;
};

std::optional<ConceptUri> parse_concept_uri(std::string_view uri) {
    if (uri.substr(0, 3) != "/c/") return std::nullopt;
    const std::size_t lang_end = uri.find('/', 3);
    if (lang_end == std::string_view::npos) return std::nullopt;
    std::size_t term_end = uri.find('/', lang_end + 1);
    if (term_end == std::string_view::npos) term_end = uri.size();
    ConceptUri c;
    c.language = std::string(uri.substr(3, lang_end - 3));
    c.term = std::string(uri.substr(lang_end + 1, term_end - lang_end - 1));
    if (c.term.empty()) return std::nullopt;
    return c;
}

std::string relation_label(std::string_view uri) {
    if (uri.substr(0, 3) == "/r/") return std::string(uri.substr(3));
    return std::string(uri);
}

void write_u32(std::ostream& out, std::uint32_t v) {
    char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

std::uint32_t read_u32(std::istream& in) {
    unsigned char buf[4];
    in.read(reinterpret_cast<char*>(buf), 4);
    if (!in) throw DataError("index file truncated");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
    return v;
}

std::uint64_t read_u64(std::istream& in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    if (!in) throw DataError("index file truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

void write_str(std::ostream& out, std::string_view s) {
    write_u32(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_str(std::istream& in) {
    const std::uint32_t n = read_u32(in);
    std::string s(n, '\0');
    in.read(s.data(), n);
    if (!in) throw DataError("index file truncated");
    return s;
}

// Parses a bracketed list cell such as ["to socialize", 'to eat'].
std::vector<std::string> parse_list_cell(std::string_view cell) {
    std::vector<std::string> out;
    std::size_t i = 0;
    const std::size_t n = cell.size();
    auto skip_ws = [&] {
        while (i < n && std::isspace((unsigned char)cell[i])) ++i;
    };
    skip_ws();
    if (i >= n) return out;
    if (cell[i] == '[') ++i;
    while (i < n) {
        skip_ws();
        if (i >= n || cell[i] == ']') break;
        std::string item;
        if (cell[i] == '"' || cell[i] == '\'') {
            const char quote = cell[i++];
            while (i < n && cell[i] != quote) {
                if (cell[i] == '\\' && i + 1 < n) ++i;
                item.push_back(cell[i++]);
            }
            if (i < n) ++i;  // closing quote
        } else {
            while (i < n && cell[i] != ',' && cell[i] != ']') item.push_back(cell[i++]);
            while (!item.empty() && std::isspace((unsigned char)item.back())) item.pop_back();
        }
        out.push_back(std::move(item));
        skip_ws();
        if (i < n && cell[i] == ',') ++i;
    }
    return out;
}

// Minimal RFC4180-style reader for one record; supports comma or tab delims.
std::vector<std::string> split_delimited(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == delim) {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace

std::string_view to_string(AtomicRelation r) { return kAtomicNames[static_cast<int>(r)]; }

std::optional<AtomicRelation> atomic_relation_from(std::string_view name) {
    for (std::size_t i = 0; i < kAtomicNames.size(); ++i)
        if (kAtomicNames[i] == name) return static_cast<AtomicRelation>(i);
    return std::nullopt;
}

bool RelationBlocklist::blocked(std::string_view relation) const {
    for (const auto& e : exact)
        if (relation == e) return true;
    for (const auto& p : prefixes)
        if (relation.substr(0, p.size()) == p) return true;
    return false;
}

std::string normalize_concept(std::string_view uri_or_term) {
    std::string term;
    if (auto c = parse_concept_uri(uri_or_term)) {
        term = c->term;
    } else {
        term = std::string(uri_or_term);
        // bare terms may still carry a part-of-speech suffix
        if (const std::size_t slash = term.find('/'); slash != std::string::npos)
            term.resize(slash);
    }
    term = percent_decode(term);
    for (char& c : term)
        if (c == '_') c = ' ';
    return text::to_lower(term);
}

std::vector<KgTuple> parse_conceptnet_dump(std::istream& in, std::string_view language,
                                           const RelationBlocklist& blocklist,
                                           ParseStats* stats) {
    if (!in) throw DataError("conceptnet dump: unreadable stream");
    ParseStats local;
    std::vector<KgTuple> tuples;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++local.lines;
        const auto fields = split_tabs(line);
        if (fields.size() < 5) {
            ++local.skipped_malformed;
            continue;
        }
        const auto start = parse_concept_uri(fields[2]);
        const auto end = parse_concept_uri(fields[3]);
        if (!start || !end) {
            ++local.skipped_malformed;
            continue;
        }
        if (start->language != language || end->language != language) {
            ++local.skipped_language;
            continue;
        }
        const std::string relation = relation_label(fields[1]);
        if (blocklist.blocked(relation)) {
            ++local.blocked_relation;
            continue;
        }
        double weight = 1.0;
        const auto meta = nlohmann::json::parse(fields[4], nullptr, false);
        if (meta.is_discarded() || !meta.is_object()) {
            ++local.skipped_malformed;
            continue;
        }
        if (auto it = meta.find("weight"); it != meta.end() && it->is_number()) {
            weight = it->get<double>();
        } else {
            ++local.missing_weight;
        }
        if (weight < 0.0) weight = 0.0;

        KgTuple t;
        t.id = static_cast<std::uint32_t>(tuples.size());
        t.head = normalize_concept(fields[2]);
        t.relation = relation;
        t.tail = normalize_concept(fields[3]);
        t.weight = weight;
        if (t.head.empty() || t.tail.empty()) {
            ++local.skipped_malformed;
            continue;
        }
        tuples.push_back(std::move(t));
        ++local.tuples;
    }
    if (stats) *stats = local;
    return tuples;
}

std::vector<AtomicEvent> parse_atomic_dump(std::istream& in, ParseStats* stats) {
    if (!in) throw DataError("atomic dump: unreadable stream");
    ParseStats local;
    std::string header;
    if (!std::getline(in, header)) throw DataError("atomic dump: empty input");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    const char delim = header.find('\t') != std::string::npos ? '\t' : ',';

    const auto columns = split_delimited(header, delim);
    int event_col = -1;
    std::vector<std::pair<int, AtomicRelation>> relation_cols;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        const std::string& name = columns[i];
        if (name == "event") {
            event_col = static_cast<int>(i);
        } else if (auto r = atomic_relation_from(name)) {
            relation_cols.emplace_back(static_cast<int>(i), *r);
        } else if (name == "prefix" || name == "split") {
            // bookkeeping columns in the public distribution, skipped
        } else {
            throw DataError("atomic dump: unknown relation column '" + name + "'");
        }
    }
    if (event_col < 0) throw DataError("atomic dump: missing 'event' column");
    if (relation_cols.empty()) throw DataError("atomic dump: no relation columns");

    std::vector<AtomicEvent> events;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++local.lines;
        const auto fields = split_delimited(line, delim);
        if (fields.size() <= static_cast<std::size_t>(event_col)) {
            ++local.skipped_malformed;
            continue;
        }
        const std::string& event = fields[static_cast<std::size_t>(event_col)];
        if (event.empty()) {
            ++local.skipped_malformed;
            continue;
        }
        for (const auto& [col, rel] : relation_cols) {
            if (fields.size() <= static_cast<std::size_t>(col)) continue;
            for (auto& tail : parse_list_cell(fields[static_cast<std::size_t>(col)])) {
                if (tail.empty() || tail == "none") continue;
                events.push_back({event, rel, std::move(tail)});
                ++local.tuples;
            }
        }
    }
    if (stats) *stats = local;
    return events;
}

std::vector<std::string> concept_index_keys(std::string_view concept) {
    std::vector<std::string> keys;
    for (const auto& tok : text::tokenize(concept)) {
        if (!tok.is_word) continue;
        const std::string lower = text::to_lower(tok.surface);
        if (text::is_stopword(lower)) continue;
        std::string lem = text::lemma(lower);
        if (text::is_stopword(lem)) continue;
        if (std::find(keys.begin(), keys.end(), lem) == keys.end()) keys.push_back(std::move(lem));
    }
    if (keys.empty()) keys.emplace_back(concept);
    return keys;
}

GraphIndex GraphIndex::build(std::vector<KgTuple> tuples) {
    GraphIndex idx;
    idx.tuples_ = std::move(tuples);
    for (const auto& t : idx.tuples_) {
        auto add = [&](const std::string& key) {
            auto& ids = idx.by_lemma_[key];
            if (ids.empty() || ids.back() != t.id) ids.push_back(t.id);
        };
        for (const auto& key : concept_index_keys(t.head)) add(key);
        for (const auto& key : concept_index_keys(t.tail)) add(key);
    }
    return idx;
}

const std::vector<std::uint32_t>& GraphIndex::lookup(std::string_view lemma) const {
    static const std::vector<std::uint32_t> empty;
    const auto it = by_lemma_.find(std::string(lemma));
    return it == by_lemma_.end() ? empty : it->second;
}

void GraphIndex::save(std::ostream& out) const {
    out.write(kIndexMagic, 8);
    write_u64(out, tuples_.size());
    for (const auto& t : tuples_) {
        write_str(out, t.head);
        write_str(out, t.relation);
        write_str(out, t.tail);
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(t.weight));
        std::memcpy(&bits, &t.weight, 8);
        write_u64(out, bits);
    }
    if (!out) throw DataError("index save: write failure");
}

GraphIndex GraphIndex::load(std::istream& in) {
    char magic[8];
    in.read(magic, 8);
    if (!in || std::string_view(magic, 8) != kIndexMagic)
        throw DataError("index load: bad magic header");
    const std::uint64_t n = read_u64(in);
    std::vector<KgTuple> tuples;
    tuples.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        KgTuple t;
        t.id = static_cast<std::uint32_t>(i);
        t.head = read_str(in);
        t.relation = read_str(in);
        t.tail = read_str(in);
        const std::uint64_t bits = read_u64(in);
        std::memcpy(&t.weight, &bits, 8);
        tuples.push_back(std::move(t));
    }
    return GraphIndex::build(std::move(tuples));
}

}  // namespace kgiqa::kgstore
