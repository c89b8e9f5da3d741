#pragma once

// Shared error types, string helpers, hashing and a small parallel map used
// across the nutriest modules.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <vector>

namespace nutriest {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or unwritable file.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed text, record or number.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Precondition violated by the caller.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

/// Corrupted, truncated or version-mismatched serialized artifact.
class LoadError : public Error {
 public:
  using Error::Error;
};

namespace text {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline char to_lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = to_lower(c);
  return out;
}

inline std::string_view trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

/// Lowercase with every whitespace run collapsed to one space, ends trimmed.
inline std::string normalize_spaces_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : trim(s)) {
    if (is_space(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(to_lower(c));
  }
  return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

/// Parses the whole of `s` (after trimming) as a finite double.
inline double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

/// Fixed-point rendering with two decimals, rounding half-up on the shortest
/// round-trip decimal representation of `v`. 1.005 prints as "1.01" even
/// though the nearest double is slightly below 1.005.
inline std::string format_fixed2(double v) {
  if (!std::isfinite(v)) throw ArgumentError("cannot format non-finite value");
  char buf[512];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
  if (ec != std::errc()) throw ArgumentError("value out of formatting range");
  std::string_view repr(buf, static_cast<size_t>(ptr - buf));

  bool negative = !repr.empty() && repr.front() == '-';
  if (negative) repr.remove_prefix(1);
  size_t dot = repr.find('.');
  std::string int_part(repr.substr(0, dot));
  std::string frac_part = dot == std::string_view::npos ? "" : std::string(repr.substr(dot + 1));
  while (frac_part.size() < 3) frac_part.push_back('0');

  // Digits of round(|v| * 100) as a decimal string.
  std::string digits = int_part + frac_part.substr(0, 2);
  if (frac_part[2] >= '5') {
    int i = static_cast<int>(digits.size()) - 1;
    while (i >= 0 && digits[static_cast<size_t>(i)] == '9') {
      digits[static_cast<size_t>(i)] = '0';
      --i;
    }
    if (i < 0) {
      digits.insert(digits.begin(), '1');
    } else {
      ++digits[static_cast<size_t>(i)];
    }
  }
  std::string out = digits.substr(0, digits.size() - 2) + "." + digits.substr(digits.size() - 2);
  bool all_zero = std::all_of(digits.begin(), digits.end(), [](char c) { return c == '0'; });
  if (negative && !all_zero) out.insert(out.begin(), '-');
  return out;
}

/// Value of format_fixed2(v) read back as a double.
inline double round_half_up2(double v) { return parse_double(format_fixed2(v)); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("error writing '" + path + "'");
}

/// Non-blank lines of `contents` with trailing '\r' removed.
inline std::vector<std::string> nonblank_lines(std::string_view contents) {
  std::vector<std::string> out;
  for (auto& line : split(contents, '\n')) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!trim(line).empty()) out.push_back(std::move(line));
  }
  return out;
}

}  // namespace text

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = kDigits[v & 0xF];
    v >>= 4;
  }
  return out;
}

/// Runs fn(i) for i in [0, n) on up to `workers` threads. The first exception
/// thrown by any call is rethrown after all workers join.
template <typename Fn>
void parallel_for(size_t n, size_t workers, Fn&& fn) {
  if (workers <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  workers = std::min(workers, n);
  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= n) return;
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            next.store(n);
          }
        }
      });
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

inline size_t default_workers() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

}  // namespace nutriest
