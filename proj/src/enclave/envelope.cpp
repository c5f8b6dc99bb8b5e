// Copyright 2026 The cardiostream Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cardiostream/enclave/envelope.hpp"

#include <sodium.h>

#include <limits>

#include "cardiostream/error.hpp"

namespace cardiostream::enclave {
namespace {

static_assert(crypto_aead_chacha20poly1305_ietf_NPUBBYTES == 12);
static_assert(crypto_aead_chacha20poly1305_ietf_ABYTES == 16);

Bytes full_aad(const KeyId& key_id, std::span<const std::uint8_t> aad) {
  Bytes out;
  out.reserve(key_id.size() + aad.size());
  put_bytes(out, key_id);
  put_bytes(out, aad);
  return out;
}

}  // namespace

Bytes ChannelAad::encode() const {
  Bytes out;
  put_u16(out, static_cast<std::uint16_t>(client_id.size()));
  put_bytes(out, as_bytes(client_id));
  put_u64(out, window_id);
  out.push_back(static_cast<std::uint8_t>(direction));
  return out;
}

std::optional<ChannelAad> ChannelAad::decode(std::span<const std::uint8_t> bytes) {
  try {
    WireReader r(bytes);
    ChannelAad aad;
    const auto len = r.u16();
    const auto id = r.take(len);
    aad.client_id.assign(id.begin(), id.end());
    aad.window_id = r.u64();
    const auto dir = r.u8();
    if (dir != 1 && dir != 2) return std::nullopt;
    aad.direction = static_cast<Direction>(dir);
    if (!r.done()) return std::nullopt;
    return aad;
  } catch (const Error&) {
    return std::nullopt;
  }
}

Bytes CipherEnvelope::encode() const {
  Bytes out;
  out.reserve(wire_size());
  put_bytes(out, key_id);
  put_bytes(out, nonce);
  put_u32(out, static_cast<std::uint32_t>(aad.size()));
  put_bytes(out, aad);
  put_u64(out, ciphertext.size());
  put_bytes(out, ciphertext);
  put_bytes(out, tag);
  return out;
}

CipherEnvelope CipherEnvelope::decode(std::span<const std::uint8_t> wire) {
  WireReader r(wire);
  CipherEnvelope env;
  env.key_id = r.fixed<8>();
  env.nonce = r.fixed<12>();
  const auto aad_len = r.u32();
  const auto aad = r.take(aad_len);
  env.aad.assign(aad.begin(), aad.end());
  const auto ct_len = r.u64();
  if (ct_len > r.remaining()) throw Error(ErrorCode::kMalformedEnvelope, "ciphertext length overruns buffer");
  const auto ct = r.take(static_cast<std::size_t>(ct_len));
  env.ciphertext.assign(ct.begin(), ct.end());
  env.tag = r.fixed<16>();
  if (!r.done()) throw Error(ErrorCode::kMalformedEnvelope, "trailing bytes after tag");
  return env;
}

EnvelopeNonce make_nonce(Direction direction, std::uint64_t counter) {
  EnvelopeNonce nonce{};
  nonce[0] = static_cast<std::uint8_t>(direction);
  for (int i = 0; i < 8; ++i) nonce[4 + i] = static_cast<std::uint8_t>(counter >> (8 * i));
  return nonce;
}

Direction nonce_direction(const EnvelopeNonce& nonce) { return static_cast<Direction>(nonce[0]); }

std::uint64_t nonce_counter(const EnvelopeNonce& nonce) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | nonce[4 + i];
  return v;
}

Sealer::Sealer(SessionKey key, Direction direction, std::uint64_t first_counter)
    : key_(key), direction_(direction), counter_(first_counter) {
  ensure_crypto_ready();
}

CipherEnvelope Sealer::seal(std::span<const std::uint8_t> plaintext, std::span<const std::uint8_t> aad) {
  if (counter_ == std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorCode::kNonceExhausted, "nonce counter exhausted for this key");
  }
  CipherEnvelope env;
  env.key_id = key_.key_id;
  env.nonce = make_nonce(direction_, counter_++);
  env.aad.assign(aad.begin(), aad.end());
  env.ciphertext.resize(plaintext.size());
  const auto ad = full_aad(env.key_id, aad);
  crypto_aead_chacha20poly1305_ietf_encrypt_detached(
      env.ciphertext.data(), env.tag.data(), nullptr, plaintext.data(), plaintext.size(), ad.data(),
      ad.size(), nullptr, env.nonce.data(), key_.secret.data());
  return env;
}

Bytes open(const CipherEnvelope& envelope, const SessionKey& key, std::span<const std::uint8_t> aad) {
  ensure_crypto_ready();
  if (!secure_equal(envelope.key_id, key.key_id)) {
    throw Error(ErrorCode::kUnknownKeyId, "envelope sealed under key " + to_hex(envelope.key_id));
  }
  if (!secure_equal(envelope.aad, aad)) {
    throw Error(ErrorCode::kAuthenticationFailure, "associated data mismatch");
  }
  Bytes plaintext(envelope.ciphertext.size());
  const auto ad = full_aad(envelope.key_id, envelope.aad);
  if (crypto_aead_chacha20poly1305_ietf_decrypt_detached(
          plaintext.data(), nullptr, envelope.ciphertext.data(), envelope.ciphertext.size(),
          envelope.tag.data(), ad.data(), ad.size(), envelope.nonce.data(), key.secret.data()) != 0) {
    sodium_memzero(plaintext.data(), plaintext.size());
    throw Error(ErrorCode::kAuthenticationFailure, "tag verification failed");
  }
  return plaintext;
}

}  // namespace cardiostream::enclave
