#include "slaas/rng.hpp"

namespace slaas {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t hash_label(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::string id)
    : seed_(seed), id_(std::move(id)), engine_(splitmix64(seed ^ splitmix64(hash_label(id_)))) {}

RngStream RngStream::substream(std::string_view label) const {
  std::string id = id_;
  id += '/';
  id += label;
  return RngStream(seed_, std::move(id));
}

RngStream RngStream::substream(std::string_view label, std::uint64_t index) const {
  std::string path(label);
  path += ':';
  path += std::to_string(index);
  return substream(path);
}

}  // namespace slaas
