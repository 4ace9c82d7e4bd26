#include "boltzchain/cli/chain_file.hpp"

#include "boltzchain/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace boltzchain::cli {

namespace {

using Index = Eigen::Index;

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> split(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        const std::size_t begin = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        if (i > begin) {
            tokens.push_back({line.substr(begin, i - begin), begin + 1});
        }
    }
    return tokens;
}

std::string where(std::size_t line, std::size_t column) {
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
}

bool parse_double(std::string_view text, double& out) {
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

struct Located {
    ChainFile file;
    std::vector<std::size_t> row_lines;
    std::vector<std::vector<std::size_t>> columns;
};

Located read_located(std::string_view text) {
    Located result;
    std::size_t n = 0;
    bool have_header = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    Index row = 0;

    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        const auto tokens = split(line);
        if (tokens.empty() || tokens.front().text.front() == '#') {
            if (end == text.size()) break;
            continue;
        }
        if (!have_header) {
            const auto& kind = tokens.front();
            if (kind.text == "ctmc") {
                result.file.kind = ChainKind::Ctmc;
            } else if (kind.text == "dtmc") {
                result.file.kind = ChainKind::Dtmc;
            } else {
                throw Error(ErrorCode::SyntaxError,
                            where(line_no, kind.column) + "expected header 'ctmc N' or 'dtmc N'");
            }
            if (tokens.size() != 2) {
                throw Error(ErrorCode::SyntaxError, where(line_no, kind.column) + "header takes exactly one state count");
            }
            const auto& count = tokens[1];
            const auto [ptr, ec] = std::from_chars(count.text.data(), count.text.data() + count.text.size(), n);
            if (ec != std::errc() || ptr != count.text.data() + count.text.size()) {
                throw Error(ErrorCode::SyntaxError, where(line_no, count.column) + "state count must be an integer");
            }
            if (n < 2) {
                throw Error(ErrorCode::SyntaxError, where(line_no, count.column) + "a chain needs at least 2 states");
            }
            if (n > kMaxStates) {
                throw Error(ErrorCode::TooLarge,
                            where(line_no, count.column) + "at most " + std::to_string(kMaxStates) + " states supported");
            }
            result.file.matrix = Matrix::Zero(static_cast<Index>(n), static_cast<Index>(n));
            have_header = true;
        } else {
            if (static_cast<std::size_t>(row) >= n) {
                throw Error(ErrorCode::DimensionMismatch,
                            where(line_no, tokens.front().column) + "more than " + std::to_string(n) + " matrix rows");
            }
            if (tokens.size() != n) {
                throw Error(ErrorCode::DimensionMismatch, where(line_no, tokens.front().column) + "row has " +
                                                              std::to_string(tokens.size()) + " entries, expected " +
                                                              std::to_string(n));
            }
            std::vector<std::size_t> cols;
            for (std::size_t j = 0; j < n; ++j) {
                double v = 0.0;
                if (!parse_double(tokens[j].text, v)) {
                    throw Error(ErrorCode::SyntaxError, where(line_no, tokens[j].column) + "'" +
                                                            std::string(tokens[j].text) + "' is not a finite number");
                }
                result.file.matrix(row, static_cast<Index>(j)) = v;
                cols.push_back(tokens[j].column);
            }
            result.row_lines.push_back(line_no);
            result.columns.push_back(std::move(cols));
            ++row;
        }
        if (end == text.size()) break;
    }
    if (!have_header) {
        throw Error(ErrorCode::SyntaxError, where(line_no, 1) + "missing 'ctmc N' or 'dtmc N' header");
    }
    if (static_cast<std::size_t>(row) != n) {
        throw Error(ErrorCode::DimensionMismatch, where(line_no, 1) + "expected " + std::to_string(n) + " rows, found " +
                                                      std::to_string(row));
    }
    return result;
}

std::string write_matrix(std::string_view header, const Matrix& m, std::string_view comment) {
    std::string out;
    if (!comment.empty()) {
        out += "# ";
        out += comment;
        out += '\n';
    }
    out += header;
    out += ' ';
    out += std::to_string(m.rows());
    out += '\n';
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j > 0) out += ' ';
            out += format_number(i == j ? 0.0 : m(i, j));
        }
        out += '\n';
    }
    return out;
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value == 0.0 ? 0.0 : value);
    return buf;
}

ChainFile read_chain_file(std::string_view text) { return read_located(text).file; }

Chain parse_chain_file(std::string_view text) {
    const Located located = read_located(text);
    const Matrix& m = located.file.matrix;
    const Index n = m.rows();
    for (Index i = 0; i < n; ++i) {
        const auto line = located.row_lines[static_cast<std::size_t>(i)];
        const auto& cols = located.columns[static_cast<std::size_t>(i)];
        double sum = 0.0;
        for (Index j = 0; j < n; ++j) {
            const auto col = cols[static_cast<std::size_t>(j)];
            if (m(i, j) < 0.0) {
                throw Error(ErrorCode::NegativeEntry, where(line, col) + "entry must be nonnegative");
            }
            if (i == j && m(i, j) != 0.0) {
                throw Error(ErrorCode::NonzeroDiagonal, where(line, col) + "diagonal entry must be written as 0");
            }
            sum += m(i, j);
        }
        if (located.file.kind == ChainKind::Dtmc && std::abs(sum - 1.0) > 1e-9) {
            throw Error(ErrorCode::RowNotStochastic, where(line, cols.front()) + "row sums to " + format_number(sum));
        }
        if (located.file.kind == ChainKind::Ctmc && !(sum > 0.0)) {
            throw Error(ErrorCode::AbsorbingState, where(line, cols.front()) + "state " + std::to_string(i + 1) +
                                                       " has no outgoing rate");
        }
    }
    if (located.file.kind == ChainKind::Ctmc) {
        return build_rate_matrix(m);
    }
    return build_jump_chain(m);
}

std::string write_chain_file(const RateMatrix& m, std::string_view comment) {
    return write_matrix("ctmc", m.rates(), comment);
}

std::string write_chain_file(const JumpChain& p, std::string_view comment) {
    return write_matrix("dtmc", p.probs(), comment);
}

}  // namespace boltzchain::cli
