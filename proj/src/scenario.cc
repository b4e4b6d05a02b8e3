#include "ptopos/scenario.h"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ptopos {

ParseFailure::ParseFailure(size_t line, size_t column, const std::string &message)
    : ToposError(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {
}

namespace {

constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";

std::string normalize_minus(std::string_view text) {
    std::string out;
    for (size_t k = 0; k < text.size();) {
        if (text.substr(k, kUnicodeMinus.size()) == kUnicodeMinus) {
            out += '-';
            k += kUnicodeMinus.size();
        } else {
            out += text[k++];
        }
    }
    return out;
}

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

[[noreturn]] void bad_number(std::string_view text, const std::string &why) {
    throw std::invalid_argument("bad number '" + std::string(text) + "': " + why);
}

Rational parse_rational_ascii(std::string_view s) {
    std::string_view body = s;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    size_t slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        bad_number(s, "expected [-]digits[/digits]");
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
        bad_number(s, "zero denominator");
    }
    Rational q(n, d);
    q.canonicalize();
    if (negative) {
        q = -q;
    }
    return q;
}

Rational parse_coefficient(std::string_view s) {
    if (s.empty() || s == "+") {
        return Rational(1);
    }
    if (s == "-") {
        return Rational(-1);
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    return parse_rational_ascii(s);
}

GaussianRational parse_complex_ascii(std::string_view s) {
    if (s.empty()) {
        bad_number(s, "empty");
    }
    if (s.back() != 'i') {
        return GaussianRational(parse_rational_ascii(s));
    }
    std::string_view body = s.substr(0, s.size() - 1);
    size_t split = std::string_view::npos;
    for (size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) {
        return GaussianRational(Rational(0), parse_coefficient(body));
    }
    return GaussianRational(parse_rational_ascii(body.substr(0, split)), parse_coefficient(body.substr(split)));
}

bool is_name_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '{' && c != '}' && c != ':' &&
           c != ',' && c != '#';
}

// Cursor over one source line; columns are 1-based byte offsets.
class LineCursor {
   public:
    LineCursor(std::string_view text, size_t line_no) : text_(text), line_(line_no) {
        size_t hash = text_.find('#');
        if (hash != std::string_view::npos) {
            text_ = text_.substr(0, hash);
        }
    }

    size_t line() const {
        return line_;
    }
    size_t column() const {
        return pos_ + 1;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            pos_++;
        }
    }

    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }

    [[noreturn]] void error(const std::string &message) const {
        throw ParseFailure(line_, column(), message);
    }

    std::string_view word(const char *what) {
        skip_space();
        size_t start = pos_;
        while (pos_ < text_.size() && is_name_char(text_[pos_])) {
            pos_++;
        }
        if (start == pos_) {
            error(std::string("expected ") + what);
        }
        return text_.substr(start, pos_ - start);
    }

    bool try_consume(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            pos_++;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!try_consume(c)) {
            error(std::string("expected '") + c + "'");
        }
    }

    // Items between `open` and `close`, separated by commas. Returns each
    // item with its starting column.
    std::vector<std::pair<std::string_view, size_t>> delimited_list(char open, char close) {
        expect(open);
        std::vector<std::pair<std::string_view, size_t>> items;
        skip_space();
        if (try_consume(close)) {
            return items;
        }
        while (true) {
            skip_space();
            size_t start = pos_;
            while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != close) {
                pos_++;
            }
            if (pos_ >= text_.size()) {
                error(std::string("unterminated list, expected '") + close + "'");
            }
            std::string_view item = text_.substr(start, pos_ - start);
            while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) {
                item.remove_suffix(1);
            }
            if (item.empty()) {
                error("empty list entry");
            }
            items.emplace_back(item, start + 1);
            if (text_[pos_++] == close) {
                return items;
            }
        }
    }

   private:
    std::string_view text_;
    size_t line_;
    size_t pos_ = 0;
};

template <typename T, typename F>
T parse_at(size_t line, size_t column, std::string_view text, F parser) {
    try {
        return parser(normalize_minus(text));
    } catch (const std::invalid_argument &e) {
        throw ParseFailure(line, column, e.what());
    }
}

Rational rational_at(size_t line, size_t column, std::string_view text) {
    return parse_at<Rational>(line, column, text, [](const std::string &s) {
        return parse_rational_ascii(s);
    });
}

Vector parse_vector(LineCursor &cur) {
    Vector v;
    for (auto [item, column] : cur.delimited_list('(', ')')) {
        v.push_back(parse_at<GaussianRational>(cur.line(), column, item, [](const std::string &s) {
            return parse_complex_ascii(s);
        }));
    }
    return v;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    try {
        return parse_rational_ascii(normalize_minus(text));
    } catch (const std::invalid_argument &e) {
        fail(ErrorKind::ParseError, e.what());
    }
}

GaussianRational parse_complex(std::string_view text) {
    try {
        return parse_complex_ascii(normalize_minus(text));
    } catch (const std::invalid_argument &e) {
        fail(ErrorKind::ParseError, e.what());
    }
}

Scenario parse_scenario(std::string_view text) {
    Scenario scenario;
    bool seen_dim = false;
    bool seen_close = false;
    auto lines = split_lines(text);
    for (size_t k = 0; k < lines.size(); k++) {
        LineCursor cur(lines[k], k + 1);
        if (cur.at_end()) {
            continue;
        }
        size_t keyword_column = cur.column();
        std::string_view keyword = cur.word("keyword");
        if (keyword == "DIM") {
            if (seen_dim) {
                cur.error("DIM given twice");
            }
            cur.skip_space();
            size_t column = cur.column();
            std::string_view value = cur.word("dimension");
            if (!all_digits(value) || std::stoul(std::string(value)) == 0) {
                throw ParseFailure(k + 1, column, "dimension must be a positive integer");
            }
            scenario.dimension = std::stoul(std::string(value));
            seen_dim = true;
        } else if (keyword == "OPERATOR") {
            scenario.operators.push_back({std::string(cur.word("operator name")), k + 1, {}});
        } else if (keyword == "EIGENVALUE") {
            if (scenario.operators.empty()) {
                throw ParseFailure(k + 1, keyword_column, "EIGENVALUE outside an OPERATOR block");
            }
            cur.skip_space();
            size_t column = cur.column();
            Eigenspace space{rational_at(k + 1, column, cur.word("eigenvalue")), {}};
            cur.expect(':');
            while (!cur.at_end()) {
                space.vectors.push_back(parse_vector(cur));
                cur.try_consume(',');
            }
            if (space.vectors.empty()) {
                cur.error("expected at least one eigenvector");
            }
            scenario.operators.back().eigendata.push_back(std::move(space));
        } else if (keyword == "STATE") {
            std::string name(cur.word("state name"));
            scenario.states.push_back({std::move(name), k + 1, parse_vector(cur)});
        } else if (keyword == "CLOSE") {
            cur.skip_space();
            size_t column = cur.column();
            std::string_view value = cur.word("on or off");
            if (value != "on" && value != "off") {
                throw ParseFailure(k + 1, column, "CLOSE expects on or off");
            }
            if (seen_close) {
                cur.error("CLOSE given twice");
            }
            scenario.close_under_questions = value == "on";
            seen_close = true;
        } else if (keyword == "QUERY") {
            QueryDecl q;
            q.line = k + 1;
            q.state = std::string(cur.word("state name"));
            q.op = std::string(cur.word("operator name"));
            for (auto [item, column] : cur.delimited_list('{', '}')) {
                q.delta.push_back(rational_at(k + 1, column, item));
            }
            scenario.queries.push_back(std::move(q));
        } else {
            throw ParseFailure(k + 1, keyword_column, "unknown keyword '" + std::string(keyword) + "'");
        }
        if (!cur.at_end()) {
            cur.error("unexpected trailing text");
        }
    }
    if (!seen_dim) {
        throw ParseFailure(1, 1, "missing DIM");
    }
    return scenario;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseFailure(0, 0, "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Scenario load_scenario(const std::string &path) {
    return parse_scenario(read_file(path));
}

std::vector<SpectralOperator> scenario_operators(const Scenario &scenario) {
    std::vector<SpectralOperator> ops;
    for (const OperatorDecl &decl : scenario.operators) {
        try {
            ops.push_back(make_operator(decl.name, scenario.dimension, decl.eigendata));
        } catch (const ToposError &e) {
            fail(
                ErrorKind::InvariantViolation,
                "operator " + decl.name + " (line " + std::to_string(decl.line) + "): " + e.what());
        }
    }
    return ops;
}

void validate_scenario(const Scenario &scenario) {
    std::set<std::string> op_names;
    for (const OperatorDecl &decl : scenario.operators) {
        if (!op_names.insert(decl.name).second) {
            fail(ErrorKind::InvariantViolation, "operator name " + decl.name + " used twice");
        }
    }
    if (scenario.operators.empty()) {
        fail(ErrorKind::InvariantViolation, "scenario declares no operators");
    }
    std::vector<SpectralOperator> ops = scenario_operators(scenario);
    std::map<std::string, const SpectralOperator *> by_name;
    for (const SpectralOperator &op : ops) {
        by_name.emplace(op.name, &op);
    }
    std::set<std::string> state_names;
    for (const StateDecl &s : scenario.states) {
        if (!state_names.insert(s.name).second) {
            fail(ErrorKind::InvariantViolation, "state name " + s.name + " used twice");
        }
        if (s.vector.size() != scenario.dimension) {
            fail(ErrorKind::InvariantViolation, "state " + s.name + " has the wrong dimension");
        }
        if (is_zero(s.vector)) {
            fail(ErrorKind::InvariantViolation, "state " + s.name + " is the zero vector");
        }
    }
    for (const QueryDecl &q : scenario.queries) {
        if (!state_names.count(q.state)) {
            fail(ErrorKind::UnknownName, "query on line " + std::to_string(q.line) + " names unknown state " + q.state);
        }
        auto it = by_name.find(q.op);
        if (it == by_name.end()) {
            fail(ErrorKind::UnknownName, "query on line " + std::to_string(q.line) + " names unknown operator " + q.op);
        }
        try {
            spectral_subset(*it->second, q.delta);
        } catch (const ToposError &e) {
            fail(ErrorKind::InvariantViolation, "query on line " + std::to_string(q.line) + ": " + e.what());
        }
    }
}

TopologyFile parse_topology_file(std::string_view text) {
    std::vector<std::string> points;
    std::vector<std::vector<std::string>> opens;
    PosetDecl poset;
    bool topology = false;
    bool order = false;
    auto lines = split_lines(text);
    size_t first_line = 0;
    for (size_t k = 0; k < lines.size(); k++) {
        LineCursor cur(lines[k], k + 1);
        if (cur.at_end()) {
            continue;
        }
        if (!first_line) {
            first_line = k + 1;
        }
        size_t keyword_column = cur.column();
        std::string_view keyword = cur.word("keyword");
        if (keyword == "POINTS" || keyword == "ELEMENTS") {
            auto &target = keyword == "POINTS" ? points : poset.elements;
            (keyword == "POINTS" ? topology : order) = true;
            while (!cur.at_end()) {
                target.emplace_back(cur.word("name"));
            }
        } else if (keyword == "OPEN") {
            topology = true;
            std::vector<std::string> open;
            for (auto [item, column] : cur.delimited_list('{', '}')) {
                open.emplace_back(item);
            }
            opens.push_back(std::move(open));
        } else if (keyword == "LEQ") {
            order = true;
            std::string p(cur.word("element"));
            std::string q(cur.word("element"));
            poset.leq.emplace_back(std::move(p), std::move(q));
        } else {
            throw ParseFailure(k + 1, keyword_column, "unknown keyword '" + std::string(keyword) + "'");
        }
        if (!cur.at_end()) {
            cur.error("unexpected trailing text");
        }
        if (topology && order) {
            throw ParseFailure(k + 1, keyword_column, "file mixes topology and poset declarations");
        }
    }
    if (order) {
        return poset;
    }
    if (!topology) {
        throw ParseFailure(first_line ? first_line : 1, 1, "expected POINTS/OPEN or ELEMENTS/LEQ declarations");
    }
    try {
        return make_topology(std::move(points), std::move(opens));
    } catch (const ToposError &e) {
        throw ParseFailure(first_line, 1, e.what());
    }
}

}  // namespace ptopos
