#include <algorithm>
#include <cstdlib>
#include <string_view>

#include "hpsg/linear.hpp"

namespace hpsg {

namespace {

constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t mix(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint64_t part : parts) {
    for (int b = 0; b < 8; ++b) {
      h ^= (part >> (8 * b)) & 0xff;
      h *= kFnvPrime;
    }
  }
  return h;
}

// Words and tags with sentence boundary padding at 0 and n + 1.
struct Context {
  std::vector<std::uint64_t> word;
  std::vector<std::uint64_t> tag;

  explicit Context(std::span<const Token> tokens) {
    const std::uint64_t bos = fnv1a("<s>");
    const std::uint64_t eos = fnv1a("</s>");
    word.push_back(bos);
    tag.push_back(bos);
    for (const Token& t : tokens) {
      word.push_back(fnv1a(t.form));
      tag.push_back(fnv1a(t.pos));
    }
    word.push_back(eos);
    tag.push_back(eos);
  }
};

std::uint64_t length_bucket(int len) {
  if (len <= 5) return static_cast<std::uint64_t>(len);
  if (len <= 10) return 6;
  if (len <= 20) return 7;
  return 8;
}

std::uint64_t distance_bucket(int dist) {
  if (dist <= 4) return static_cast<std::uint64_t>(dist);
  if (dist <= 9) return 5;
  return 6;
}

}  // namespace

std::uint64_t fnv1a(std::string_view text, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : text) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::vector<std::uint64_t> span_templates(std::span<const Token> tokens, int i, int j) {
  const Context cx(tokens);
  const std::uint64_t len = length_bucket(j - i + 1);
  const auto& w = cx.word;
  const auto& p = cx.tag;
  return {
      mix({1}),
      mix({2, p[i]}),
      mix({3, p[j]}),
      mix({4, w[i]}),
      mix({5, w[j]}),
      mix({6, p[i - 1]}),
      mix({7, p[j + 1]}),
      mix({8, p[i], p[j]}),
      mix({9, p[i - 1], p[i]}),
      mix({10, p[j], p[j + 1]}),
      mix({11, p[i - 1], p[j + 1]}),
      mix({12, len}),
      mix({13, p[i], len}),
      mix({14, w[i - 1]}),
      mix({15, w[j + 1]}),
      mix({16, p[i], p[j], len}),
  };
}

std::vector<std::uint64_t> arc_templates(std::span<const Token> tokens, int child, int head) {
  const Context cx(tokens);
  const std::uint64_t root = fnv1a("ROOT");
  const int n = static_cast<int>(tokens.size());
  const std::uint64_t hw = head == 0 ? root : cx.word[head];
  const std::uint64_t hp = head == 0 ? root : cx.tag[head];
  const std::uint64_t hp_prev = head == 0 ? root : cx.tag[head - 1];
  const std::uint64_t hp_next = head == 0 ? root : cx.tag[std::min(head + 1, n + 1)];
  const std::uint64_t cw = cx.word[child];
  const std::uint64_t cp = cx.tag[child];
  const std::uint64_t cp_prev = cx.tag[child - 1];
  const std::uint64_t cp_next = cx.tag[child + 1];
  const std::uint64_t dir = head == 0 ? 2 : (head < child ? 0 : 1);
  const std::uint64_t dist = head == 0 ? 0 : distance_bucket(std::abs(head - child));
  return {
      mix({101, hp, cp}),
      mix({102, hw, cp}),
      mix({103, hp, cw}),
      mix({104, hw, cw}),
      mix({105, hp}),
      mix({106, cp}),
      mix({107, hw}),
      mix({108, cw}),
      mix({109, hp, cp, dir, dist}),
      mix({110, dir, dist}),
      mix({111, hp, cp, hp_next, cp_prev}),
      mix({112, hp, cp, hp_prev, cp_next}),
      mix({113, hp, cp, dir}),
      mix({114, hw, hp, cp, dir}),
  };
}

std::size_t span_index(std::uint64_t feature, int label, std::size_t dim) {
  return mix({feature, static_cast<std::uint64_t>(label)}) % dim;
}

std::size_t arc_index(std::uint64_t feature, std::size_t dim) {
  return mix({feature, 0xa7c}) % dim;
}

}  // namespace hpsg
