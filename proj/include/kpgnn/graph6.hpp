#ifndef KPGNN_GRAPH6_HPP
#define KPGNN_GRAPH6_HPP

#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kpgnn/error.hpp"
#include "kpgnn/graph.hpp"

// graph6: N(n) followed by the upper triangle of the adjacency matrix in
// column order (x(0,1), x(0,2), x(1,2), x(0,3), ...), packed six bits per
// byte, big-endian, each byte offset by 63. Labels and edge types are not
// representable and are dropped on emission.

namespace kpgnn::graph6 {

inline constexpr std::string_view kHeader = ">>graph6<<";
inline constexpr int kBias = 63;
inline constexpr std::size_t kMaxNodes = 68719476735ULL;  // 2^36 - 1

namespace detail {

inline Error malformed(std::size_t line_no, const std::string& what) {
  return Error(ErrorCode::kMalformedLine, "line " + std::to_string(line_no) + ": " + what);
}

inline void encode_size(std::size_t n, std::string& out) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(((n >> shift) & 0x3f) + kBias));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(((n >> shift) & 0x3f) + kBias));
  }
}

}  // namespace detail

/// Parses one graph6 line (no trailing newline). `line_no` is for messages.
inline Graph parse_line(std::string_view line, std::size_t line_no = 1) {
  if (line.substr(0, kHeader.size()) == kHeader) line.remove_prefix(kHeader.size());
  if (line.empty()) throw detail::malformed(line_no, "empty graph6 line");
  for (char c : line) {
    const auto b = static_cast<unsigned char>(c);
    if (b < 63 || b > 126) throw detail::malformed(line_no, "illegal byte " + std::to_string(b));
  }
  std::size_t pos = 0;
  auto next6 = [&]() -> std::uint64_t {
    if (pos >= line.size()) throw detail::malformed(line_no, "truncated size field");
    return static_cast<std::uint64_t>(static_cast<unsigned char>(line[pos++]) - kBias);
  };
  std::uint64_t n = next6();
  if (n == 63) {
    std::size_t digits = 3;
    if (pos < line.size() && line[pos] == 126) {
      ++pos;
      digits = 6;
    }
    n = 0;
    for (std::size_t i = 0; i < digits; ++i) n = (n << 6) | next6();
  }
  const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::uint64_t bytes = (bits + 5) / 6;
  if (line.size() - pos != bytes) {
    throw detail::malformed(line_no, "expected " + std::to_string(bytes) + " adjacency bytes, got " +
                                         std::to_string(line.size() - pos));
  }
  std::vector<Edge> edges;
  std::uint64_t bit = 0;
  for (std::uint64_t j = 1; j < n; ++j) {
    for (std::uint64_t i = 0; i < j; ++i, ++bit) {
      const auto byte = static_cast<unsigned char>(line[pos + bit / 6]) - kBias;
      if ((byte >> (5 - bit % 6)) & 1) edges.push_back({static_cast<Node>(i), static_cast<Node>(j)});
    }
  }
  for (; bit < bytes * 6; ++bit) {
    const auto byte = static_cast<unsigned char>(line[pos + bit / 6]) - kBias;
    if ((byte >> (5 - bit % 6)) & 1) throw detail::malformed(line_no, "nonzero padding bits");
  }
  return Graph::build(static_cast<std::size_t>(n), edges);
}

/// One graph per non-blank line, order preserved. A leading ">>graph6<<" on
/// any line is stripped; trailing CR/whitespace is ignored.
inline std::vector<Graph> parse(std::istream& in) {
  std::vector<Graph> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    std::string_view view(line);
    if (view.substr(0, kHeader.size()) == kHeader) view.remove_prefix(kHeader.size());
    if (view.empty()) continue;
    out.push_back(parse_line(view, line_no));
  }
  return out;
}

inline std::vector<Graph> parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse(in);
}

/// The graph6 line for g, without newline.
inline std::string emit(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n > kMaxNodes) throw Error(ErrorCode::kTooLarge, "graph too large for graph6");
  std::string out;
  detail::encode_size(n, out);
  const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  std::vector<unsigned char> packed((bits + 5) / 6, 0);
  for (const auto& e : g.edges()) {
    // e.u < e.v; column-major upper triangle index.
    const std::uint64_t j = static_cast<std::uint64_t>(e.v);
    const std::uint64_t idx = j * (j - 1) / 2 + static_cast<std::uint64_t>(e.u);
    packed[idx / 6] |= static_cast<unsigned char>(1u << (5 - idx % 6));
  }
  for (auto b : packed) out.push_back(static_cast<char>(b + kBias));
  return out;
}

}  // namespace kpgnn::graph6

#endif  // KPGNN_GRAPH6_HPP
