#include "netag/transcript.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "netag/errors.hpp"

namespace netag {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
           c == '\v';
}

char upper(char c) {
    return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
}

struct ElementInfo {
    std::string_view element;  // ENAMEX / TIMEX / NUMEX
    ClassLabel cls;
};

constexpr std::array<ElementInfo, 7> kElements = {{
    {"ENAMEX", ClassLabel::Person},
    {"ENAMEX", ClassLabel::Location},
    {"ENAMEX", ClassLabel::Organization},
    {"TIMEX", ClassLabel::Date},
    {"TIMEX", ClassLabel::Time},
    {"NUMEX", ClassLabel::Money},
    {"NUMEX", ClassLabel::Percent},
}};

std::string_view element_for_class(ClassLabel c) {
    for (const auto& e : kElements) {
        if (e.cls == c) return e.element;
    }
    return "ENAMEX";
}

// Scanner over one utterance string, tracking column for error messages.
class MarkupScanner {
public:
    MarkupScanner(std::string_view text, std::string doc_id,
                  std::size_t line_no)
        : text_(text), line_no_(line_no), out_{std::move(doc_id), {}, {}} {}

    AnnotatedTranscript run() {
        while (pos_ < text_.size()) {
            if (is_space(text_[pos_])) {
                ++pos_;
            } else if (text_[pos_] == '<') {
                scan_tag();
            } else {
                scan_word();
            }
        }
        if (open_) fail("annotation element not closed", open_col_);
        return std::move(out_);
    }

private:
    [[noreturn]] void fail(const std::string& msg, std::size_t col) const {
        throw ParseError(msg, line_no_, col + 1);
    }

    void scan_word() {
        std::size_t begin = pos_;
        std::string word;
        while (pos_ < text_.size() && !is_space(text_[pos_]) &&
               text_[pos_] != '<') {
            word.push_back(upper(text_[pos_]));
            ++pos_;
        }
        if (word.empty()) fail("empty token", begin);
        out_.tokens.push_back(std::move(word));
    }

    void scan_tag() {
        std::size_t tag_col = pos_;
        ++pos_;  // '<'
        bool closing = pos_ < text_.size() && text_[pos_] == '/';
        if (closing) ++pos_;
        std::string name;
        while (pos_ < text_.size() && text_[pos_] != '>' &&
               !is_space(text_[pos_])) {
            name.push_back(text_[pos_++]);
        }
        if (closing) {
            if (pos_ >= text_.size() || text_[pos_] != '>')
                fail("malformed closing tag", tag_col);
            ++pos_;
            close_element(name, tag_col);
            return;
        }
        // Opening tag: expect TYPE="..." then '>'.
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
        std::string attr_value;
        if (!consume_type_attribute(&attr_value)) {
            fail("expected TYPE attribute in <" + name + "> tag", tag_col);
        }
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
        if (pos_ >= text_.size() || text_[pos_] != '>')
            fail("unterminated tag", tag_col);
        ++pos_;
        open_element(name, attr_value, tag_col);
    }

    bool consume_type_attribute(std::string* value) {
        static constexpr std::string_view kPrefix = "TYPE=\"";
        if (text_.substr(pos_, kPrefix.size()) != kPrefix) return false;
        pos_ += kPrefix.size();
        while (pos_ < text_.size() && text_[pos_] != '"') {
            value->push_back(text_[pos_++]);
        }
        if (pos_ >= text_.size()) return false;
        ++pos_;  // closing quote
        return true;
    }

    void open_element(const std::string& name, const std::string& type,
                      std::size_t col) {
        if (open_) fail("nested annotations are not allowed", col);
        auto cls = class_from_name(type);
        bool known = false;
        if (cls) {
            for (const auto& e : kElements) {
                if (e.element == name && e.cls == *cls) known = true;
            }
        }
        if (!known) {
            fail("unknown TYPE attribute \"" + type + "\" for element <" +
                     name + ">",
                 col);
        }
        open_ = true;
        open_cls_ = *cls;
        open_element_ = name;
        open_start_ = out_.tokens.size();
        open_col_ = col;
    }

    void close_element(const std::string& name, std::size_t col) {
        if (!open_) fail("closing tag </" + name + "> without opener", col);
        if (name != open_element_)
            fail("mismatched closing tag </" + name + ">", col);
        std::size_t len = out_.tokens.size() - open_start_;
        if (len == 0) fail("empty annotation element", col);
        out_.spans.push_back({open_cls_, open_start_, len});
        open_ = false;
    }

    std::string_view text_;
    std::size_t line_no_;
    AnnotatedTranscript out_;
    std::size_t pos_ = 0;
    bool open_ = false;
    ClassLabel open_cls_ = ClassLabel::Other;
    std::string open_element_;
    std::size_t open_start_ = 0;
    std::size_t open_col_ = 0;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::string cur;
    for (char c : text) {
        if (is_space(c)) {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(upper(c));
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

AnnotatedTranscript parse_markup(std::string_view text, std::string doc_id,
                                 std::size_t line_no) {
    return MarkupScanner(text, std::move(doc_id), line_no).run();
}

std::string write_markup(const AnnotatedTranscript& t) {
    std::string out;
    std::size_t next_span = 0;
    std::size_t open_end = 0;
    bool open = false;
    for (std::size_t i = 0; i < t.tokens.size(); ++i) {
        if (!out.empty()) out.push_back(' ');
        if (!open && next_span < t.spans.size() &&
            t.spans[next_span].start == i) {
            const auto& s = t.spans[next_span];
            out += '<';
            out += element_for_class(s.cls);
            out += " TYPE=\"";
            out += class_name(s.cls);
            out += "\">";
            open = true;
            open_end = s.start + s.length;
        }
        out += t.tokens[i];
        if (open && i + 1 == open_end) {
            out += "</";
            out += element_for_class(t.spans[next_span].cls);
            out += '>';
            open = false;
            ++next_span;
        }
    }
    return out;
}

ClassSequence to_class_sequence(const AnnotatedTranscript& t) {
    ClassSequence out(t.tokens.size(), ClassLabel::Plus);
    std::size_t next_span = 0;
    bool in_untagged_run = false;
    for (std::size_t i = 0; i < t.tokens.size(); ++i) {
        if (next_span < t.spans.size() && t.spans[next_span].start == i) {
            out[i] = t.spans[next_span].cls;
            in_untagged_run = false;
            // continuation positions stay Plus
            i += t.spans[next_span].length - 1;
            ++next_span;
        } else if (!in_untagged_run) {
            out[i] = ClassLabel::Other;
            in_untagged_run = true;
        }
    }
    return out;
}

std::vector<EntitySpan> extract_entities(const std::vector<Token>& tokens,
                                         const ClassSequence& classes) {
    if (tokens.size() != classes.size()) {
        throw DataError("token/class sequence length mismatch: " +
                        std::to_string(tokens.size()) + " vs " +
                        std::to_string(classes.size()));
    }
    if (!classes.empty() && classes[0] == ClassLabel::Plus) {
        throw DataError("class sequence starts with the continuation marker");
    }
    std::vector<EntitySpan> spans;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i] == ClassLabel::Plus) {
            if (!spans.empty() &&
                spans.back().start + spans.back().length == i) {
                ++spans.back().length;
            }
            // Plus continuing an untagged run extends nothing.
        } else if (is_entity_class(classes[i])) {
            spans.push_back({classes[i], i, 1});
        }
    }
    return spans;
}

Corpus parse_corpus_text(std::string_view text, std::string_view default_id) {
    Corpus corpus;
    std::string doc_id(default_id);
    std::size_t doc_counter = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool explicit_doc = false;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos)
                                    ? text.substr(pos)
                                    : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        if (line == "#DOC" || line.starts_with("#DOC ")) {
            std::string_view rest = line.substr(4);
            while (!rest.empty() && is_space(rest.front())) rest.remove_prefix(1);
            while (!rest.empty() && is_space(rest.back())) rest.remove_suffix(1);
            if (rest.empty())
                throw ParseError("#DOC line without an id", line_no, 1);
            doc_id = std::string(rest);
            explicit_doc = true;
            continue;
        }
        bool blank = true;
        for (char c : line) {
            if (!is_space(c)) blank = false;
        }
        if (blank) {
            if (explicit_doc || !corpus.empty()) {
                explicit_doc = false;
                ++doc_counter;
                doc_id = std::string(default_id) + "-" +
                         std::to_string(doc_counter);
            }
            continue;
        }
        corpus.push_back(parse_markup(line, doc_id, line_no));
    }
    return corpus;
}

Corpus read_corpus_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open corpus file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_corpus_text(buf.str(), path);
}

std::string corpus_to_text(const Corpus& corpus) {
    std::string out;
    std::string cur_doc;
    bool first = true;
    for (const auto& t : corpus) {
        if (first || t.doc_id != cur_doc) {
            if (!first) out += "\n";
            out += "#DOC " + t.doc_id + "\n";
            cur_doc = t.doc_id;
            first = false;
        }
        out += write_markup(t);
        out += '\n';
    }
    return out;
}

void write_corpus_file(const std::string& path, const Corpus& corpus) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write corpus file: " + path);
    out << corpus_to_text(corpus);
}

}  // namespace netag
