#include "netag/model_io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "netag/errors.hpp"

namespace netag {

namespace {

constexpr std::string_view kMagic = "netag-model 1";

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& s, std::size_t line_no) {
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw DataError("model file line " + std::to_string(line_no) +
                        ": bad number '" + s + "'");
    }
    return v;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

// One chain level <-> one file section.
struct SectionSpec {
    std::string name;
    std::size_t ctx_tokens = 0;
    std::size_t event_tokens = 1;
    std::function<std::vector<std::string>(ContextKey)> unpack_ctx;
    std::function<std::vector<std::string>(EventId)> unpack_event;
    std::function<ContextKey(const std::vector<std::string>&, std::size_t)>
        pack_ctx;
    std::function<EventId(const std::vector<std::string>&, std::size_t,
                          std::size_t)>
        pack_event;
};

void write_section(std::string& out, const SectionSpec& spec,
                   const DiscountedCpd& cpd) {
    std::vector<ContextKey> keys;
    keys.reserve(cpd.contexts().size());
    for (const auto& [ctx, entry] : cpd.contexts()) keys.push_back(ctx);
    std::sort(keys.begin(), keys.end());

    out += "section " + spec.name + " contexts " +
           std::to_string(keys.size()) + "\n";
    for (ContextKey ctx : keys) {
        const auto& entry = *cpd.find(ctx);
        std::vector<std::string> ctx_tokens = spec.unpack_ctx(ctx);
        bool first = true;
        for (const auto& [event, freq] : entry.events) {
            out += fmt_double(std::log10(freq));
            for (const auto& t : ctx_tokens) {
                out += ' ';
                out += t;
            }
            for (const auto& t : spec.unpack_event(event)) {
                out += ' ';
                out += t;
            }
            if (first) {
                out += ' ';
                out += fmt_double(std::log10(entry.weaker_weight));
                first = false;
            }
            out += '\n';
        }
    }
    out += "end-section\n";
}

class Reader {
public:
    explicit Reader(const std::string& text) : in_(text) {}

    bool next(std::string* line) {
        while (std::getline(in_, *line)) {
            ++line_no_;
            if (!line->empty() && line->back() == '\r') line->pop_back();
            return true;
        }
        return false;
    }

    std::string expect_line() {
        std::string line;
        if (!next(&line)) {
            throw DataError("model file truncated at line " +
                            std::to_string(line_no_ + 1));
        }
        return line;
    }

    /// `key value...` header line; returns the value part.
    std::string expect_kv(std::string_view key) {
        std::string line = expect_line();
        if (line.size() <= key.size() || line.compare(0, key.size(), key) != 0 ||
            line[key.size()] != ' ') {
            throw DataError("model file line " + std::to_string(line_no_) +
                            ": expected '" + std::string(key) +
                            " ...', got '" + line + "'");
        }
        return line.substr(key.size() + 1);
    }

    std::size_t line_no() const { return line_no_; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw DataError("model file line " + std::to_string(line_no_) + ": " +
                        msg);
    }

private:
    std::istringstream in_;
    std::size_t line_no_ = 0;
};

DiscountedCpd read_section(Reader& reader, const SectionSpec& spec) {
    std::string header = reader.expect_line();
    auto head = split_ws(header);
    if (head.size() != 4 || head[0] != "section" || head[2] != "contexts") {
        reader.fail("expected 'section " + spec.name + " contexts <n>'");
    }
    if (head[1] != spec.name) {
        reader.fail("expected section '" + spec.name + "', found '" + head[1] +
                    "'");
    }
    const std::size_t expected_contexts =
        static_cast<std::size_t>(std::strtoull(head[3].c_str(), nullptr, 10));

    DiscountedCpd cpd;
    const std::size_t base = 1 + spec.ctx_tokens + spec.event_tokens;
    bool have_ctx = false;
    ContextKey cur_ctx = 0;
    DiscountedCpd::Entry cur_entry;
    std::size_t contexts_read = 0;

    auto flush = [&]() {
        if (!have_ctx) return;
        std::sort(cur_entry.events.begin(), cur_entry.events.end());
        double mass = 0.0;
        for (const auto& [e, f] : cur_entry.events) mass += f;
        cur_entry.retained_mass = std::min(mass, 1.0);
        cpd.insert(cur_ctx, std::move(cur_entry));
        cur_entry = {};
        ++contexts_read;
    };

    std::string line;
    while (true) {
        line = reader.expect_line();
        if (line == "end-section") break;
        auto tokens = split_ws(line);
        if (tokens.size() != base && tokens.size() != base + 1) {
            reader.fail("bad entry arity in section " + spec.name);
        }
        double prob = std::pow(
            10.0, parse_double(tokens[0], reader.line_no()));
        ContextKey ctx = spec.pack_ctx(tokens, 1);
        EventId event = spec.pack_event(tokens, 1 + spec.ctx_tokens,
                                        reader.line_no());
        if (tokens.size() == base + 1) {
            // First line of a new context carries the weaker-model weight.
            flush();
            have_ctx = true;
            cur_ctx = ctx;
            cur_entry.weaker_weight = std::pow(
                10.0, parse_double(tokens[base], reader.line_no()));
        } else if (!have_ctx || ctx != cur_ctx) {
            reader.fail("context continuation without a weight line");
        }
        cur_entry.events.emplace_back(event, prob);
    }
    flush();
    if (contexts_read != expected_contexts) {
        reader.fail("section " + spec.name + " declared " +
                    std::to_string(expected_contexts) + " contexts but held " +
                    std::to_string(contexts_read));
    }
    return cpd;
}

// --- token packing helpers -------------------------------------------------

std::string class_token(std::uint8_t idx) {
    return std::string(class_name(static_cast<ClassLabel>(idx)));
}

ClassLabel parse_class_token(const std::string& s, Reader& reader) {
    auto c = class_from_name(s);
    if (!c) reader.fail("unknown class token '" + s + "'");
    return *c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Writers

namespace {

void write_header(std::string& out, std::string_view kind, Regime regime,
                  const DiscountScheme& scheme, const Vocabulary& v) {
    out += kMagic;
    out += '\n';
    out += "kind ";
    out += kind;
    out += '\n';
    out += "regime ";
    out += regime_name(regime);
    out += '\n';
    out += "discount ";
    out += discount_kind_name(scheme.kind);
    out += '\n';
    out += "gt-max-r " + std::to_string(scheme.gt_max_r) + '\n';
    out += "abs-b ";
    out += scheme.absolute_b ? fmt_double(*scheme.absolute_b) : "auto";
    out += '\n';
    out += "possible-vocab " + std::to_string(v.possible_size()) + '\n';
    out += "cutoff " + std::to_string(v.cutoff()) + '\n';
    out += "has-unknown " + std::string(v.has_unknown() ? "1" : "0") + '\n';
    out += "classes";
    for (ClassLabel c : kAllClasses) {
        out += ' ';
        out += class_name(c);
    }
    out += '\n';
    out += "vocab " + std::to_string(v.words().size()) + '\n';
    for (const auto& w : v.words()) {
        out += w;
        out += '\n';
    }
    out += "end-vocab\n";
}

std::vector<std::string> fused_tokens(EventId e, const SymbolTable& symbols) {
    std::uint8_t cls = static_cast<std::uint8_t>(e >> 24);
    WordId word = e & 0x00FFFFFF;
    return {class_token(cls), symbols.name(word)};
}

SectionSpec implicit_section(int level_ctx_events, const SymbolTable& write_symbols,
                             SymbolTable* read_symbols, Reader* reader) {
    SectionSpec spec;
    spec.name = "ngram-" + std::to_string(level_ctx_events + 1);
    spec.ctx_tokens = static_cast<std::size_t>(level_ctx_events) * 2;
    spec.event_tokens = 2;
    spec.unpack_ctx = [level_ctx_events, &write_symbols](ContextKey ctx) {
        std::vector<std::string> out;
        if (level_ctx_events == 2) {
            auto e1 = static_cast<EventId>(ctx >> 32);
            auto e2 = static_cast<EventId>(ctx & 0xFFFFFFFFull);
            for (EventId e : {e1, e2}) {
                auto t = fused_tokens(e, write_symbols);
                out.insert(out.end(), t.begin(), t.end());
            }
        } else if (level_ctx_events == 1) {
            out = fused_tokens(static_cast<EventId>(ctx), write_symbols);
        }
        return out;
    };
    spec.unpack_event = [&write_symbols](EventId e) {
        return fused_tokens(e, write_symbols);
    };
    if (reader != nullptr) {
        auto fuse_from = [read_symbols, reader](
                             const std::vector<std::string>& t,
                             std::size_t at) -> EventId {
            ClassLabel c = parse_class_token(t[at], *reader);
            WordId w = read_symbols->intern(t[at + 1]);
            return ImplicitNEModel::fuse({c, w});
        };
        spec.pack_ctx = [level_ctx_events, fuse_from](
                            const std::vector<std::string>& t,
                            std::size_t at) -> ContextKey {
            if (level_ctx_events == 2) {
                return (static_cast<ContextKey>(fuse_from(t, at)) << 32) |
                       fuse_from(t, at + 2);
            }
            if (level_ctx_events == 1) return fuse_from(t, at);
            return 0;
        };
        spec.pack_event = [fuse_from](const std::vector<std::string>& t,
                                      std::size_t at, std::size_t) {
            return fuse_from(t, at);
        };
    }
    return spec;
}

}  // namespace

std::string serialize_model(const ImplicitNEModel& m) {
    std::string out;
    write_header(out, "implicit", m.chain().regime(), m.scheme(),
                 m.vocabulary());
    out += "order " + std::to_string(m.order()) + '\n';
    for (int k = 0; k < m.order(); ++k) {
        int ctx_events = m.order() - 1 - k;
        SectionSpec spec =
            implicit_section(ctx_events, m.symbols(), nullptr, nullptr);
        write_section(out, spec, m.chain().level(static_cast<std::size_t>(k)));
    }
    out += "end-model\n";
    return out;
}

namespace {

// Context layouts of the explicit model's chain levels.
enum class CtxLayout { CCW, CC, C, Empty, CW, WC, W };

SectionSpec explicit_section(const std::string& name, CtxLayout layout,
                             bool class_event, const SymbolTable& write_symbols,
                             SymbolTable* read_symbols, Reader* reader) {
    SectionSpec spec;
    spec.name = name;
    spec.event_tokens = class_event ? 1 : 1;
    switch (layout) {
        case CtxLayout::CCW: spec.ctx_tokens = 3; break;
        case CtxLayout::CC: spec.ctx_tokens = 2; break;
        case CtxLayout::C: spec.ctx_tokens = 1; break;
        case CtxLayout::Empty: spec.ctx_tokens = 0; break;
        case CtxLayout::CW: spec.ctx_tokens = 2; break;
        case CtxLayout::WC: spec.ctx_tokens = 2; break;
        case CtxLayout::W: spec.ctx_tokens = 1; break;
    }
    spec.unpack_ctx = [layout, &write_symbols](ContextKey k) {
        std::vector<std::string> out;
        switch (layout) {
            case CtxLayout::CCW:
                out.push_back(class_token((k >> 40) & 0xFF));
                out.push_back(class_token((k >> 32) & 0xFF));
                out.push_back(
                    write_symbols.name(static_cast<WordId>(k & 0xFFFFFFFFull)));
                break;
            case CtxLayout::CC:
                out.push_back(class_token((k >> 8) & 0xFF));
                out.push_back(class_token(k & 0xFF));
                break;
            case CtxLayout::C:
                out.push_back(class_token(k & 0xFF));
                break;
            case CtxLayout::Empty:
                break;
            case CtxLayout::CW:
                out.push_back(class_token((k >> 32) & 0xFF));
                out.push_back(
                    write_symbols.name(static_cast<WordId>(k & 0xFFFFFFFFull)));
                break;
            case CtxLayout::WC:
                out.push_back(
                    write_symbols.name(static_cast<WordId>(k >> 8)));
                out.push_back(class_token(k & 0xFF));
                break;
            case CtxLayout::W:
                out.push_back(
                    write_symbols.name(static_cast<WordId>(k)));
                break;
        }
        return out;
    };
    spec.unpack_event = [class_event, &write_symbols](EventId e) {
        std::vector<std::string> out;
        if (class_event) {
            out.push_back(class_token(static_cast<std::uint8_t>(e)));
        } else {
            out.push_back(write_symbols.name(e));
        }
        return out;
    };
    if (reader != nullptr) {
        spec.pack_ctx = [layout, read_symbols, reader](
                            const std::vector<std::string>& t,
                            std::size_t at) -> ContextKey {
            switch (layout) {
                case CtxLayout::CCW:
                    return ExplicitNEModel::key_ccw(
                        parse_class_token(t[at], *reader),
                        parse_class_token(t[at + 1], *reader),
                        read_symbols->intern(t[at + 2]));
                case CtxLayout::CC:
                    return ExplicitNEModel::key_cc(
                        parse_class_token(t[at], *reader),
                        parse_class_token(t[at + 1], *reader));
                case CtxLayout::C:
                    return ExplicitNEModel::key_c(
                        parse_class_token(t[at], *reader));
                case CtxLayout::Empty:
                    return 0;
                case CtxLayout::CW:
                    return ExplicitNEModel::key_cw(
                        parse_class_token(t[at], *reader),
                        read_symbols->intern(t[at + 1]));
                case CtxLayout::WC:
                    return ExplicitNEModel::key_wc(
                        read_symbols->intern(t[at]),
                        parse_class_token(t[at + 1], *reader));
                case CtxLayout::W:
                    return ExplicitNEModel::key_w(
                        read_symbols->intern(t[at]));
            }
            return 0;
        };
        spec.pack_event = [class_event, read_symbols, reader](
                              const std::vector<std::string>& t,
                              std::size_t at, std::size_t) -> EventId {
            if (class_event) {
                return class_index(parse_class_token(t[at], *reader));
            }
            return read_symbols->intern(t[at]);
        };
    }
    return spec;
}

struct ExplicitLayout {
    std::string name;
    CtxLayout layout;
    bool class_event;
};

const std::vector<ExplicitLayout> kWordA = {
    {"word-a-3", CtxLayout::CCW, false},
    {"word-a-2", CtxLayout::CC, false},
    {"word-a-1", CtxLayout::C, false},
    {"word-a-0", CtxLayout::Empty, false},
};
const std::vector<ExplicitLayout> kClassA = {
    {"class-a-2", CtxLayout::CW, true},
    {"class-a-1", CtxLayout::C, true},
};
const std::vector<ExplicitLayout> kWordB = {
    {"word-b-2", CtxLayout::CW, false},
    {"word-b-1", CtxLayout::C, false},
    {"word-b-0", CtxLayout::Empty, false},
};
const std::vector<ExplicitLayout> kClassB = {
    {"class-b-2", CtxLayout::WC, true},
    {"class-b-1", CtxLayout::W, true},
};

}  // namespace

std::string serialize_model(const ExplicitNEModel& m) {
    std::string out;
    write_header(out, "explicit", m.word_chain_a().regime(), m.scheme(),
                 m.vocabulary());
    auto dump = [&](const std::vector<ExplicitLayout>& layouts,
                    const SmoothingChain& chain) {
        for (std::size_t k = 0; k < layouts.size(); ++k) {
            SectionSpec spec =
                explicit_section(layouts[k].name, layouts[k].layout,
                                 layouts[k].class_event, m.symbols(), nullptr,
                                 nullptr);
            write_section(out, spec, chain.level(k));
        }
    };
    dump(kWordA, m.word_chain_a());
    dump(kClassA, m.class_chain_a());
    dump(kWordB, m.word_chain_b());
    dump(kClassB, m.class_chain_b());

    out += "section class-unigram contexts 1\n";
    for (const auto& [event, p] : m.class_chain_a().terminal().probs) {
        out += fmt_double(std::log10(p));
        out += ' ';
        out += class_token(static_cast<std::uint8_t>(event));
        out += '\n';
    }
    out += "end-section\n";
    out += "end-model\n";
    return out;
}

std::string serialize_model(const AnyModel& m) {
    return std::visit([](const auto& model) { return serialize_model(model); },
                      m);
}

void write_model(const std::string& path, const AnyModel& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file: " + path);
    out << serialize_model(m);
    if (!out) throw DataError("failed writing model file: " + path);
}

// ---------------------------------------------------------------------------
// Reader

namespace {

struct Header {
    std::string kind;
    Regime regime = Regime::Backoff;
    DiscountScheme scheme;
    std::uint64_t possible_vocab = 0;
    std::uint64_t cutoff = 0;
    bool has_unknown = false;
    std::vector<std::string> words;
};

Header read_header(Reader& reader) {
    std::string magic = reader.expect_line();
    if (magic != kMagic) {
        throw DataError(
            "unsupported model file: expected header '" + std::string(kMagic) +
            "', got '" + magic + "'");
    }
    Header h;
    h.kind = reader.expect_kv("kind");
    if (h.kind != "implicit" && h.kind != "explicit") {
        reader.fail("unknown model kind '" + h.kind + "'");
    }
    auto regime = regime_from_name(reader.expect_kv("regime"));
    if (!regime) reader.fail("unknown regime");
    h.regime = *regime;
    auto kind = discount_kind_from_name(reader.expect_kv("discount"));
    if (!kind) reader.fail("unknown discount scheme");
    h.scheme.kind = *kind;
    h.scheme.gt_max_r = std::strtoull(
        reader.expect_kv("gt-max-r").c_str(), nullptr, 10);
    std::string b = reader.expect_kv("abs-b");
    if (b != "auto") h.scheme.absolute_b = parse_double(b, reader.line_no());
    h.possible_vocab = std::strtoull(
        reader.expect_kv("possible-vocab").c_str(), nullptr, 10);
    h.cutoff =
        std::strtoull(reader.expect_kv("cutoff").c_str(), nullptr, 10);
    h.has_unknown = reader.expect_kv("has-unknown") == "1";
    std::string classes = reader.expect_kv("classes");
    std::string expected_classes;
    for (ClassLabel c : kAllClasses) {
        if (!expected_classes.empty()) expected_classes += ' ';
        expected_classes += class_name(c);
    }
    if (classes != expected_classes) reader.fail("unexpected class list");
    std::size_t vocab_n = std::strtoull(
        reader.expect_kv("vocab").c_str(), nullptr, 10);
    h.words.reserve(vocab_n);
    for (std::size_t i = 0; i < vocab_n; ++i) {
        h.words.push_back(reader.expect_line());
        if (h.words.back().empty()) reader.fail("empty vocabulary word");
    }
    if (reader.expect_line() != "end-vocab") reader.fail("expected end-vocab");
    return h;
}

}  // namespace

AnyModel parse_model(const std::string& text) {
    Reader reader(text);
    Header h = read_header(reader);

    SymbolTable symbols;
    symbols.intern(kBosWord);
    symbols.intern(kEosWord);
    symbols.intern(kUnknownWord);
    for (const auto& w : h.words) symbols.intern(w);
    Vocabulary vocab(h.words, h.cutoff, h.has_unknown, h.possible_vocab);

    if (h.kind == "implicit") {
        int order = static_cast<int>(
            std::strtol(reader.expect_kv("order").c_str(), nullptr, 10));
        if (order < 1 || order > 3) reader.fail("implicit order must be 1..3");
        std::vector<DiscountedCpd> levels;
        for (int k = 0; k < order; ++k) {
            SectionSpec spec = implicit_section(order - 1 - k, symbols,
                                                &symbols, &reader);
            levels.push_back(read_section(reader, spec));
        }
        if (reader.expect_line() != "end-model") reader.fail("expected end-model");

        EventId eos = ImplicitNEModel::fuse(
            {ClassLabel::Other, *symbols.find(kEosWord)});
        Terminal floor = Terminal::uniform(
            static_cast<double>(kNumClasses) *
                static_cast<double>(vocab.possible_size()),
            {eos});
        SmoothingChain chain(std::move(levels), std::move(floor), h.regime);
        ImplicitNEModel model(std::move(chain), std::move(vocab),
                              std::move(symbols), order);
        model.set_scheme(h.scheme);
        return model;
    }

    Terminal word_floor =
        Terminal::uniform(static_cast<double>(vocab.possible_size()));
    std::vector<DiscountedCpd> wa_levels, ca_levels, wb_levels, cb_levels;
    auto read_levels = [&](const std::vector<ExplicitLayout>& layouts,
                           std::vector<DiscountedCpd>* out) {
        for (const auto& lay : layouts) {
            SectionSpec spec = explicit_section(lay.name, lay.layout,
                                                lay.class_event, symbols,
                                                &symbols, &reader);
            out->push_back(read_section(reader, spec));
        }
    };
    read_levels(kWordA, &wa_levels);
    read_levels(kClassA, &ca_levels);
    read_levels(kWordB, &wb_levels);
    read_levels(kClassB, &cb_levels);

    std::string uh = reader.expect_line();
    if (uh != "section class-unigram contexts 1") {
        reader.fail("expected 'section class-unigram contexts 1'");
    }
    std::vector<std::pair<EventId, double>> class_probs;
    for (std::size_t i = 0; i < kNumClasses; ++i) {
        auto tokens = split_ws(reader.expect_line());
        if (tokens.size() != 2) reader.fail("bad class-unigram line");
        ClassLabel c = parse_class_token(tokens[1], reader);
        class_probs.emplace_back(
            class_index(c),
            std::pow(10.0, parse_double(tokens[0], reader.line_no())));
    }
    if (reader.expect_line() != "end-section") reader.fail("expected end-section");
    if (reader.expect_line() != "end-model") reader.fail("expected end-model");
    Terminal class_terminal = Terminal::distribution(std::move(class_probs));

    ExplicitNEModel model(
        SmoothingChain(std::move(wa_levels), word_floor, h.regime),
        SmoothingChain(std::move(ca_levels), class_terminal, h.regime),
        SmoothingChain(std::move(wb_levels), word_floor, h.regime),
        SmoothingChain(std::move(cb_levels), class_terminal, h.regime),
        std::move(vocab), std::move(symbols));
    model.set_scheme(h.scheme);
    return model;
}

AnyModel read_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

bool is_explicit(const AnyModel& m) {
    return std::holds_alternative<ExplicitNEModel>(m);
}

}  // namespace netag
