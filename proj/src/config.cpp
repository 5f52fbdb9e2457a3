#include "netag/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "netag/errors.hpp"

namespace netag {

namespace {

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    char* end = nullptr;
    std::uint64_t v = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') {
        throw DataError("config: " + key + " expects an integer, got '" +
                        value + "'");
    }
    return v;
}

double parse_real(const std::string& key, const std::string& value) {
    char* end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        throw DataError("config: " + key + " expects a number, got '" + value +
                        "'");
    }
    return v;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "cutoff") {
        cutoff = parse_uint(key, value);
    } else if (key == "possible-vocab") {
        possible_vocab = parse_uint(key, value);
        if (possible_vocab == 0)
            throw DataError("config: possible-vocab must be positive");
    } else if (key == "discount") {
        auto k = discount_kind_from_name(value);
        if (!k) throw DataError("config: unknown discount scheme '" + value + "'");
        scheme.kind = *k;
    } else if (key == "gt-max-r") {
        scheme.gt_max_r = parse_uint(key, value);
    } else if (key == "abs-b") {
        if (value == "auto") {
            scheme.absolute_b.reset();
        } else {
            double b = parse_real(key, value);
            if (!(b > 0.0 && b < 1.0))
                throw DataError("config: abs-b must lie in (0, 1)");
            scheme.absolute_b = b;
        }
    } else if (key == "regime") {
        auto r = regime_from_name(value);
        if (!r) throw DataError("config: unknown regime '" + value + "'");
        regime = *r;
    } else if (key == "mixture-k") {
        mixture_k = parse_real(key, value);
        if (!(mixture_k >= 0.0 && mixture_k <= 1.0))
            throw DataError("config: mixture-k must lie in [0, 1]");
    } else if (key == "seed") {
        seed = parse_uint(key, value);
    } else if (key == "order") {
        std::uint64_t v = parse_uint(key, value);
        if (v < 1 || v > 3) throw DataError("config: order must be 1..3");
        order = static_cast<int>(v);
    } else if (key == "score-mode") {
        if (value == "verbatim") {
            score_mode = ScoreMode::Verbatim;
        } else if (value == "asr") {
            score_mode = ScoreMode::Asr;
        } else {
            throw DataError("config: score-mode must be verbatim or asr");
        }
    } else if (key == "tie-break") {
        std::vector<ClassLabel> order_list;
        std::istringstream in(value);
        std::string name;
        while (std::getline(in, name, ',')) {
            auto c = class_from_name(name);
            if (!c) throw DataError("config: unknown class '" + name +
                                    "' in tie-break");
            order_list.push_back(*c);
        }
        std::vector<ClassLabel> sorted = order_list;
        std::sort(sorted.begin(), sorted.end());
        std::vector<ClassLabel> all{kAllClasses.begin(), kAllClasses.end()};
        std::sort(all.begin(), all.end());
        if (sorted != all) {
            throw DataError(
                "config: tie-break must list each of the 9 classes once");
        }
        tie_break = std::move(order_list);
    } else if (key == "line-length") {
        line_length = parse_uint(key, value);
        if (line_length == 0)
            throw DataError("config: line-length must be positive");
    } else if (key == "lines-per-doc") {
        lines_per_doc = parse_uint(key, value);
        if (lines_per_doc == 0)
            throw DataError("config: lines-per-doc must be positive");
    } else {
        throw DataError("config: unknown key '" + key + "'");
    }
}

void RunConfig::validate() const {
    if (possible_vocab == 0) throw DataError("config: possible-vocab must be positive");
    if (!(mixture_k >= 0.0 && mixture_k <= 1.0))
        throw DataError("config: mixture-k must lie in [0, 1]");
    if (order < 1 || order > 3) throw DataError("config: order must be 1..3");
    if (tie_break.size() != kNumClasses)
        throw DataError("config: tie-break must list all 9 classes");
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file: " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string stripped;
        for (char c : line) {
            if (c == '#') break;
            stripped.push_back(c);
        }
        while (!stripped.empty() && (stripped.back() == ' ' || stripped.back() == '\t'))
            stripped.pop_back();
        std::size_t start = stripped.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        stripped = stripped.substr(start);
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw DataError("config file " + path + " line " +
                            std::to_string(line_no) + ": expected key=value");
        }
        std::string key = stripped.substr(0, eq);
        std::string value = stripped.substr(eq + 1);
        auto trim = [](std::string& s) {
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
            std::size_t b = s.find_first_not_of(" \t");
            s = b == std::string::npos ? std::string() : s.substr(b);
        };
        trim(key);
        trim(value);
        base.set(key, value);
    }
    base.validate();
    return base;
}

}  // namespace netag
