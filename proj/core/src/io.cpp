#include "specsdp/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

namespace specsdp {

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

// Line-oriented tokenizer that tracks line numbers for parse errors.
class LineReader {
 public:
  explicit LineReader(std::ifstream& in) : in_(in) {}

  // Next non-empty, non-comment line ('*' and '"' start SDPA comments).
  bool next_line(std::string& line, bool skip_comments) {
    while (std::getline(in_, line)) {
      ++line_number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::size_t pos = line.find_first_not_of(" \t");
      if (pos == std::string::npos) continue;
      if (skip_comments && (line[pos] == '*' || line[pos] == '"')) continue;
      return true;
    }
    return false;
  }

  long line_number() const { return line_number_; }

 private:
  std::ifstream& in_;
  long line_number_ = 0;
};

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : line) {
    // SDPA files may decorate the block-size line with braces and commas.
    if (c == '{' || c == '}' || c == '(' || c == ')' || c == ',') c = ' ';
    if (c == ' ' || c == '\t') {
      if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

long long parse_int(const std::string& token, long line) {
  long long value = 0;
  const auto res =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw ParseError("expected integer, got '" + token + "'", line);
  return value;
}

double parse_num(const std::string& token, long line) {
  double value = 0.0;
  const auto res =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw ParseError("expected number, got '" + token + "'", line);
  return value;
}

}  // namespace

void write_instance(const MatrixCompletionInstance& inst,
                    const std::string& path) {
  std::ofstream out = open_out(path);
  out << "MCI 1\n";
  out << inst.p << ' ' << inst.q << ' ' << inst.k << ' ' << inst.m() << ' '
      << inst.seed << '\n';
  for (Index t = 0; t < inst.m(); ++t) {
    out << (inst.omega[t].first + 1) << ' ' << (inst.omega[t].second + 1)
        << ' ' << format_double(inst.values[t]) << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

MatrixCompletionInstance read_instance(const std::string& path) {
  std::ifstream in = open_in(path);
  LineReader reader(in);
  std::string line;

  if (!reader.next_line(line, false) || tokenize(line) !=
      std::vector<std::string>{"MCI", "1"})
    throw ParseError("expected 'MCI 1' header in '" + path + "'",
                     reader.line_number());

  if (!reader.next_line(line, false))
    throw ParseError("missing instance header", reader.line_number());
  const auto header = tokenize(line);
  if (header.size() != 5)
    throw ParseError("expected 'p q k m seed'", reader.line_number());

  MatrixCompletionInstance inst;
  inst.p = parse_int(header[0], reader.line_number());
  inst.q = parse_int(header[1], reader.line_number());
  inst.k = parse_int(header[2], reader.line_number());
  const Index m = parse_int(header[3], reader.line_number());
  inst.seed = static_cast<std::uint64_t>(
      parse_int(header[4], reader.line_number()));
  if (inst.p < 1 || inst.q < 1 || inst.k < 1 || m < 1)
    throw ParseError("instance header values must be positive",
                     reader.line_number());

  inst.omega.reserve(m);
  inst.values.resize(m);
  for (Index t = 0; t < m; ++t) {
    if (!reader.next_line(line, false))
      throw ParseError("expected " + std::to_string(m) +
                           " observation lines, got " + std::to_string(t),
                       reader.line_number());
    const auto tokens = tokenize(line);
    if (tokens.size() != 3)
      throw ParseError("expected 'i j value'", reader.line_number());
    const Index i = parse_int(tokens[0], reader.line_number()) - 1;
    const Index j = parse_int(tokens[1], reader.line_number()) - 1;
    if (i < 0 || i >= inst.p || j < 0 || j >= inst.q)
      throw ParseError("observation index out of range", reader.line_number());
    inst.omega.emplace_back(i, j);
    inst.values[t] = parse_num(tokens[2], reader.line_number());
  }

  // Attach generator factors when the file matches its own seed exactly.
  try {
    MatrixCompletionInstance regen =
        generate(inst.p, inst.q, inst.k, m, inst.seed);
    if (regen.omega == inst.omega &&
        (regen.values.array() == inst.values.array()).all()) {
      inst.g1 = std::move(regen.g1);
      inst.g2 = std::move(regen.g2);
    }
  } catch (const InvalidInputError&) {
    // Leave factors absent; the file is still a valid instance.
  }
  return inst;
}

ConstraintSet parse_sdpa(const std::string& path) {
  std::ifstream in = open_in(path);
  LineReader reader(in);
  std::string line;

  if (!reader.next_line(line, true))
    throw ParseError("empty SDPA file '" + path + "'", reader.line_number());
  const Index m = parse_int(tokenize(line)[0], reader.line_number());
  if (m < 1) throw ParseError("SDPA: need m >= 1", reader.line_number());

  if (!reader.next_line(line, true))
    throw ParseError("SDPA: missing block count", reader.line_number());
  const Index nblocks = parse_int(tokenize(line)[0], reader.line_number());
  if (nblocks != 1)
    throw UnsupportedFeatureError(
        "SDPA: only a single PSD block is supported, file has " +
        std::to_string(nblocks) + " blocks");

  if (!reader.next_line(line, true))
    throw ParseError("SDPA: missing block sizes", reader.line_number());
  const auto sizes = tokenize(line);
  if (sizes.size() != 1)
    throw UnsupportedFeatureError("SDPA: only a single PSD block is supported");
  const long long block = parse_int(sizes[0], reader.line_number());
  if (block < 0)
    throw UnsupportedFeatureError(
        "SDPA: LP (negative size) blocks are not supported");
  const Index n = block;
  if (n < 1) throw ParseError("SDPA: block size must be >= 1",
                              reader.line_number());

  if (!reader.next_line(line, true))
    throw ParseError("SDPA: missing right-hand side", reader.line_number());
  const auto rhs_tokens = tokenize(line);
  if (static_cast<Index>(rhs_tokens.size()) != m)
    throw ParseError("SDPA: expected " + std::to_string(m) +
                         " right-hand side values",
                     reader.line_number());
  Vector b(m);
  for (Index i = 0; i < m; ++i)
    b[i] = parse_num(rhs_tokens[i], reader.line_number());

  Matrix C = Matrix::Zero(n, n);
  std::vector<std::map<std::pair<Index, Index>, double>> entries(m);
  while (reader.next_line(line, true)) {
    const auto tokens = tokenize(line);
    if (tokens.size() != 5)
      throw ParseError("SDPA: expected 'matno blkno i j value'",
                       reader.line_number());
    const long long mat = parse_int(tokens[0], reader.line_number());
    const long long blk = parse_int(tokens[1], reader.line_number());
    Index i = parse_int(tokens[2], reader.line_number()) - 1;
    Index j = parse_int(tokens[3], reader.line_number()) - 1;
    const double value = parse_num(tokens[4], reader.line_number());
    if (mat < 0 || mat > m)
      throw ParseError("SDPA: matrix number out of range",
                       reader.line_number());
    if (blk != 1)
      throw ParseError("SDPA: block number out of range",
                       reader.line_number());
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw ParseError("SDPA: entry index out of range", reader.line_number());
    if (i > j) std::swap(i, j);
    if (mat == 0) {
      C(i, j) = value;
      C(j, i) = value;
    } else if (value != 0.0) {
      entries[mat - 1][{i, j}] += value;
    }
  }

  std::vector<SparseSymMatrix> constraints;
  constraints.reserve(m);
  for (Index i = 0; i < m; ++i) {
    std::vector<Triplet> upper;
    for (const auto& [key, value] : entries[i]) {
      if (value != 0.0)
        upper.emplace_back(static_cast<int>(key.first),
                           static_cast<int>(key.second), value);
    }
    if (upper.empty())
      throw ParseError("SDPA: constraint " + std::to_string(i + 1) +
                           " has no entries",
                       reader.line_number());
    constraints.emplace_back(n, std::move(upper));
  }
  return ConstraintSet(n, std::move(constraints), std::move(b), std::move(C));
}

void write_sdpa(const ConstraintSet& cs, const std::string& path) {
  std::ofstream out = open_out(path);
  out << cs.m() << "\n1\n" << cs.n() << "\n";
  for (Index i = 0; i < cs.m(); ++i)
    out << (i ? " " : "") << format_double(cs.b()[i]);
  out << '\n';
  for (Index i = 0; i < cs.n(); ++i) {
    for (Index j = i; j < cs.n(); ++j) {
      if (cs.C()(i, j) != 0.0)
        out << "0 1 " << (i + 1) << ' ' << (j + 1) << ' '
            << format_double(cs.C()(i, j)) << '\n';
    }
  }
  for (Index t = 0; t < cs.m(); ++t) {
    for (const auto& e : cs.constraints()[t].upper) {
      out << (t + 1) << " 1 " << (e.row() + 1) << ' ' << (e.col() + 1) << ' '
          << format_double(e.value()) << '\n';
    }
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

Iterate read_start(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string magic, version;
  in >> magic >> version;
  if (!in || magic != "SDPSTART" || version != "1")
    throw ParseError("expected 'SDPSTART 1' header in '" + path + "'", 1);
  Index n = 0, m = 0;
  in >> n >> m;
  if (!in || n < 1 || m < 1)
    throw ParseError("bad dimensions in start file '" + path + "'", 2);

  Iterate it;
  it.y.resize(m);
  for (Index i = 0; i < m; ++i) in >> it.y[i];
  it.X.resize(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) in >> it.X(i, j);
  it.S.resize(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) in >> it.S(i, j);
  if (!in)
    throw ParseError("start file '" + path + "' ended early", 0);

  const double x_asym = (it.X - it.X.transpose()).cwiseAbs().maxCoeff();
  const double s_asym = (it.S - it.S.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max({1.0, it.X.cwiseAbs().maxCoeff(),
                                 it.S.cwiseAbs().maxCoeff()});
  if (x_asym > 1e-10 * scale || s_asym > 1e-10 * scale)
    throw InvalidInputError("start file matrices are not symmetric");
  it.X = 0.5 * (it.X + it.X.transpose()).eval();
  it.S = 0.5 * (it.S + it.S.transpose()).eval();
  it.mu = it.X.cwiseProduct(it.S).sum() / static_cast<double>(n);
  return it;
}

void write_start(const Iterate& it, const std::string& path) {
  std::ofstream out = open_out(path);
  const Index n = it.X.rows();
  out << "SDPSTART 1\n" << n << ' ' << it.y.size() << '\n';
  for (Index i = 0; i < it.y.size(); ++i)
    out << (i ? " " : "") << format_double(it.y[i]);
  out << '\n';
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j)
      out << (j ? " " : "") << format_double(it.X(i, j));
    out << '\n';
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j)
      out << (j ? " " : "") << format_double(it.S(i, j));
    out << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

const char* const kIterationCsvHeader =
    "iter,mu,gap,pinf,dinf,ktilde,tau,kappaW0,pcg_iters,pcg_status,alpha,"
    "time_ms";

std::string iteration_csv_row(const IterationRecord& r, bool zero_time) {
  std::ostringstream row;
  row << r.iter << ',' << format_double(r.mu) << ',' << format_double(r.gap)
      << ',' << format_double(r.pinf) << ',' << format_double(r.dinf) << ','
      << r.ktilde << ',' << format_double(r.tau) << ','
      << format_double(r.kappa_w0) << ',' << r.pcg_iterations << ','
      << r.pcg_status << ',' << format_double(r.alpha) << ','
      << format_double(zero_time ? 0.0 : r.time_ms);
  return row.str();
}

void write_iteration_csv(const std::vector<IterationRecord>& records,
                         const std::string& path, bool zero_time) {
  std::ofstream out = open_out(path);
  out << kIterationCsvHeader << '\n';
  for (const auto& r : records) out << iteration_csv_row(r, zero_time) << '\n';
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace specsdp
