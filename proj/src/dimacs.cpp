#include "mprover/dimacs.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mprover/error.hpp"

namespace mprover {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw Error(Errc::ParseError, "dimacs line " + std::to_string(line) + ": " + msg);
}

bool parse_long(std::string_view tok, long& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

}  // namespace

Matrix parse_dimacs(std::string_view text) {
  bool have_header = false;
  long symbols = 0, expected = 0;
  std::vector<Clause> clauses;
  Clause current;
  bool in_clause = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    std::istringstream in{std::string(line)};
    std::string tok;
    if (!(in >> tok)) continue;
    if (tok[0] == 'c') continue;
    if (tok == "%") break;  // SATLIB trailer
    if (tok == "p") {
      if (have_header) fail(line_no, "duplicate header");
      std::string fmt, k, n, extra;
      if (!(in >> fmt >> k >> n) || fmt != "cnf") fail(line_no, "expected 'p cnf <symbols> <clauses>'");
      if (in >> extra) fail(line_no, "trailing tokens in header");
      if (!parse_long(k, symbols) || !parse_long(n, expected) || symbols < 0 || expected < 0) {
        fail(line_no, "bad header counts");
      }
      have_header = true;
      continue;
    }
    if (!have_header) fail(line_no, "clause before 'p cnf' header");
    do {
      long v = 0;
      if (!parse_long(tok, v)) fail(line_no, "bad literal '" + tok + "'");
      if (v == 0) {
        clauses.push_back(std::move(current));
        current.clear();
        in_clause = false;
        continue;
      }
      long mag = v < 0 ? -v : v;
      if (mag > symbols) fail(line_no, "literal " + tok + " exceeds declared symbol count");
      current.push_back(Literal{static_cast<std::uint32_t>(mag - 1), v < 0});
      in_clause = true;
    } while (in >> tok);
  }
  if (!have_header) throw Error(Errc::ParseError, "dimacs: missing 'p cnf' header");
  if (in_clause) throw Error(Errc::ParseError, "dimacs: last clause is not zero-terminated");
  if (static_cast<long>(clauses.size()) != expected) {
    throw Error(Errc::ParseError, "dimacs: header declares " + std::to_string(expected) +
                                      " clauses, found " + std::to_string(clauses.size()));
  }
  return Matrix(std::move(clauses), static_cast<std::uint32_t>(symbols));
}

Matrix read_dimacs(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dimacs(buf.str());
}

void write_dimacs(std::ostream& out, const Matrix& matrix) {
  out << "p cnf " << matrix.alphabet_size() << ' ' << matrix.size() << '\n';
  for (const Clause& c : matrix.clauses()) {
    for (const Literal& lit : c) out << dimacs_literal(lit) << ' ';
    out << "0\n";
  }
}

std::string to_dimacs(const Matrix& matrix) {
  std::ostringstream out;
  write_dimacs(out, matrix);
  return out.str();
}

}  // namespace mprover
