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

#include <gtest/gtest.h>

#include <random>

#include "cardiostream/enclave/channel.hpp"
#include "enclave_harness.hpp"
#include "test_support.hpp"

namespace cardiostream::enclave {
namespace {

using testing::make_batch;
using testing::open_reply;
using testing::seal_task;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

const hrv::AnalysisAlgorithm kSdnn{hrv::Algorithm::kSdnn, 1};
const hrv::AnalysisAlgorithm kIdentity{hrv::Algorithm::kIdentity, 1};
const hrv::AnalysisAlgorithm kBands{hrv::Algorithm::kHrvBands, 1};

hrv::RrSeries three_beats(const std::string& client = "c1") {
  return hrv::RrSeries(client, {{kDefaultEpochMs + 800, hrv::RrInterval::from_ms(800)},
                                {kDefaultEpochMs + 1610, hrv::RrInterval::from_ms(810)},
                                {kDefaultEpochMs + 2400, hrv::RrInterval::from_ms(790)}});
}

SessionKey random_key() {
  SessionKey k;
  random_fill(k.key_id);
  random_fill(k.secret);
  return k;
}

TEST(Measurement, DeterministicAndFieldSensitive) {
  EXPECT_EQ(measure_code(kSdnn), measure_code(kSdnn));
  EXPECT_NE(measure_code(kSdnn), measure_code({hrv::Algorithm::kSdnn, 2}));
  EXPECT_NE(measure_code(kSdnn), measure_code(kBands));
  EXPECT_NE(measure_code(kSdnn, "cardiostream-engine/1.0"), measure_code(kSdnn, "cardiostream-engine/1.1"));
  EXPECT_EQ(measure_code(kSdnn).hex().size(), 64u);
}

TEST(Runtime, CreateComputesMeasurement) {
  auto a = create_enclave(kIdentity);
  auto b = create_enclave(kIdentity);
  EXPECT_EQ(a.state(), RuntimeState::kCreated);
  EXPECT_EQ(a.measurement(), measure_code(kIdentity));
  EXPECT_EQ(a.measurement(), b.measurement());
  EXPECT_NE(&a, &b);
}

TEST(Runtime, EcallBeforeAttestationIsRefused) {
  auto rt = create_enclave(kIdentity);
  Sealer sealer(random_key(), Direction::kToTrusted);
  EXPECT_EQ(code_of([&] { rt.ecall(seal_task(sealer, make_batch("c1", 0, three_beats()))); }),
            ErrorCode::kCallGateRefused);
}

TEST(Runtime, AttestEchoesNonceAndAdvances) {
  auto rt = create_enclave(kSdnn);
  AttestationVerifier v(measure_code(kSdnn));
  const auto nonce = v.challenge();
  const auto report = rt.attest(measure_code(kSdnn), nonce);
  EXPECT_EQ(report.challenge_nonce, nonce);
  EXPECT_EQ(rt.state(), RuntimeState::kAttested);
  EXPECT_TRUE(verify_binding(report, AttestationRoot::fixture().public_key()));
  EXPECT_NO_THROW(v.verify_report(report));
}

TEST(Runtime, MeasurementMismatchKeepsCreated) {
  auto rt = create_enclave(kBands);
  ChallengeNonce nonce{};
  EXPECT_EQ(code_of([&] { rt.attest(measure_code(kSdnn), nonce); }), ErrorCode::kMeasurementMismatch);
  EXPECT_EQ(rt.state(), RuntimeState::kCreated);
}

TEST(Attestation, VerifierRejectsWrongMeasurement) {
  auto rt = create_enclave(kBands);
  AttestationVerifier v(measure_code(kSdnn));
  const auto report = rt.attest(measure_code(kBands), v.challenge());
  EXPECT_EQ(code_of([&] { v.verify_report(report); }), ErrorCode::kMeasurementMismatch);
}

TEST(Attestation, ReplayedReportIsStale) {
  const auto m = measure_code(kSdnn);
  AttestationVerifier v(m);
  auto rt1 = create_enclave(kSdnn);
  const auto old_report = rt1.attest(m, v.challenge());
  v.verify_report(old_report);
  // Second use of the same report.
  EXPECT_EQ(code_of([&] { v.verify_report(old_report); }), ErrorCode::kStaleNonce);
  // Report answering an older challenge after a new one was issued.
  auto rt2 = create_enclave(kSdnn);
  const auto first = v.challenge();
  const auto report2 = rt2.attest(m, first);
  v.challenge();
  EXPECT_EQ(code_of([&] { v.verify_report(report2); }), ErrorCode::kStaleNonce);
  // No outstanding challenge at all.
  AttestationVerifier fresh(m);
  EXPECT_EQ(code_of([&] { fresh.verify_report(old_report); }), ErrorCode::kStaleNonce);
}

TEST(Attestation, ReorderedHandshakeMessagesAreRejected) {
  const auto m = measure_code(kSdnn);
  AttestationVerifier v(m);
  auto rt = create_enclave(kSdnn);
  const auto report = rt.attest(m, v.challenge());
  // Session derivation before verification.
  EXPECT_EQ(code_of([&] { v.derive_session(report); }), ErrorCode::kInvalidReport);
  // Report from another runtime cannot establish a session here.
  auto other = create_enclave(kSdnn);
  AttestationVerifier v2(m);
  const auto foreign = other.attest(m, v2.challenge());
  EXPECT_EQ(code_of([&] { rt.establish_session(foreign, v.key_share()); }), ErrorCode::kInvalidReport);
  EXPECT_EQ(rt.state(), RuntimeState::kAttested);
}

TEST(Attestation, TamperedBindingTagIsInvalid) {
  const auto m = measure_code(kSdnn);
  AttestationVerifier v(m);
  auto rt = create_enclave(kSdnn);
  auto report = rt.attest(m, v.challenge());
  report.binding_tag[5] ^= 0x01;
  EXPECT_EQ(code_of([&] { v.verify_report(report); }), ErrorCode::kInvalidReport);
  EXPECT_EQ(code_of([&] { rt.establish_session(report, v.key_share()); }), ErrorCode::kInvalidReport);
  EXPECT_EQ(rt.state(), RuntimeState::kAttested);
}

TEST(Attestation, BothEndsDeriveTheSameKey) {
  const auto m = measure_code(kSdnn);
  AttestationVerifier v(m);
  auto rt = create_enclave(kSdnn);
  const auto report = rt.attest(m, v.challenge());
  v.verify_report(report);
  rt.establish_session(report, v.key_share());
  const auto key = v.derive_session(report);
  EXPECT_EQ(rt.state(), RuntimeState::kSessioned);
  EXPECT_EQ(rt.session_key_id(), key.key_id);
  // Working channel: a sealed task round-trips.
  Sealer sealer(key, Direction::kToTrusted);
  const auto reply = rt.ecall(seal_task(sealer, make_batch("c1", 4, three_beats())));
  const auto out = open_reply(reply, key, "c1", 4);
  ASSERT_TRUE(out && out->ok());
  EXPECT_NEAR(std::get<hrv::SdnnOut>(out->value()).sdnn_ms, 8.16497, 1e-5);
}

TEST(Attestation, SessionsAreFresh) {
  const auto m = measure_code(kSdnn);
  auto r1 = create_enclave(kSdnn);
  auto r2 = create_enclave(kSdnn);
  const auto k1 = attest_and_establish(r1, m);
  const auto k2 = attest_and_establish(r2, m);
  EXPECT_NE(k1.key_id, k2.key_id);
  EXPECT_NE(k1.secret, k2.secret);
}

TEST(Envelope, RoundTripsAcrossSizes) {
  const auto key = random_key();
  Sealer sealer(key, Direction::kToTrusted);
  const Bytes aad = {1, 2, 3};
  std::mt19937_64 rng(3);
  for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{63}, std::size_t{4096}, std::size_t{1} << 20}) {
    Bytes msg(n);
    for (auto& b : msg) b = static_cast<std::uint8_t>(rng());
    const auto env = sealer.seal(msg, aad);
    EXPECT_EQ(env.wire_size(), CipherEnvelope::kOverhead + aad.size() + n);
    EXPECT_EQ(open(CipherEnvelope::decode(env.encode()), key, aad), msg);
  }
}

TEST(Envelope, LargeMessageRoundTrip) {
  const auto key = random_key();
  Sealer sealer(key, Direction::kFromTrusted);
  Bytes msg(32u << 20, 0x5a);
  EXPECT_EQ(open(sealer.seal(msg, {}), key, {}), msg);
}

TEST(Envelope, WireLayoutIsLittleEndian) {
  const auto key = random_key();
  Sealer sealer(key, Direction::kToTrusted, 0x0102);
  const Bytes aad = {9, 9};
  const auto wire = sealer.seal(Bytes{1, 2, 3}, aad).encode();
  ASSERT_EQ(wire.size(), 48u + 2 + 3);
  EXPECT_TRUE(std::equal(key.key_id.begin(), key.key_id.end(), wire.begin()));
  EXPECT_EQ(wire[8], 1);                      // direction byte of the nonce
  EXPECT_EQ(wire[12], 0x02);                  // counter, little-endian
  EXPECT_EQ(wire[13], 0x01);
  EXPECT_EQ(wire[20], 2);                     // aad_len
  EXPECT_EQ(wire[21] | wire[22] | wire[23], 0);
  EXPECT_EQ(wire[26], 3);                     // ct_len
}

TEST(Envelope, NoncesStrictlyIncrease) {
  Sealer sealer(random_key(), Direction::kToTrusted);
  std::uint64_t last = 0;
  for (int i = 0; i < 100; ++i) {
    const auto env = sealer.seal(Bytes{1}, {});
    const auto c = nonce_counter(env.nonce);
    if (i > 0) {
      EXPECT_GT(c, last);
    }
    last = c;
  }
}

TEST(Envelope, CounterExhaustion) {
  Sealer sealer(random_key(), Direction::kToTrusted, UINT64_MAX - 1);
  EXPECT_NO_THROW(sealer.seal(Bytes{1}, {}));
  EXPECT_EQ(code_of([&] { sealer.seal(Bytes{1}, {}); }), ErrorCode::kNonceExhausted);
}

TEST(Envelope, EverySingleBitFlipFailsToOpen) {
  const auto key = random_key();
  Sealer sealer(key, Direction::kToTrusted);
  const Bytes aad = {7, 7, 7, 7};
  const auto wire = sealer.seal(as_bytes("a short secret message"), aad).encode();
  for (std::size_t bit = 0; bit < wire.size() * 8; ++bit) {
    auto bad = wire;
    bad[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    const auto code = code_of([&] { open(CipherEnvelope::decode(bad), key, aad); });
    EXPECT_TRUE(code == ErrorCode::kAuthenticationFailure || code == ErrorCode::kUnknownKeyId ||
                code == ErrorCode::kMalformedEnvelope)
        << "bit " << bit << " -> " << error_name(code);
  }
}

TEST(Envelope, WrongAadWrongKeyUnknownKeyId) {
  const auto key = random_key();
  Sealer sealer(key, Direction::kToTrusted);
  const auto env = sealer.seal(as_bytes("payload"), Bytes{1});
  EXPECT_EQ(code_of([&] { open(env, key, Bytes{2}); }), ErrorCode::kAuthenticationFailure);
  auto wrong = random_key();
  wrong.key_id = key.key_id;
  EXPECT_EQ(code_of([&] { open(env, wrong, Bytes{1}); }), ErrorCode::kAuthenticationFailure);
  EXPECT_EQ(code_of([&] { open(env, random_key(), Bytes{1}); }), ErrorCode::kUnknownKeyId);
  EXPECT_TRUE(open(sealer.seal({}, Bytes{1}), key, Bytes{1}).empty());
}

TEST(Envelope, DecodeRejectsTruncationAndTrailingBytes) {
  Sealer sealer(random_key(), Direction::kToTrusted);
  auto wire = sealer.seal(as_bytes("x"), {}).encode();
  EXPECT_EQ(code_of([&] { CipherEnvelope::decode(std::span(wire).first(wire.size() - 1)); }),
            ErrorCode::kMalformedEnvelope);
  wire.push_back(0);
  EXPECT_EQ(code_of([&] { CipherEnvelope::decode(wire); }), ErrorCode::kMalformedEnvelope);
}

class SessionedRuntime : public ::testing::Test {
 protected:
  void SetUp() override { key_ = attest_and_establish(rt_, measure_code(kIdentity)); }
  TrustedRuntime rt_{kIdentity};
  SessionKey key_;
};

TEST_F(SessionedRuntime, IdentityThroughTheGate) {
  Sealer sealer(key_, Direction::kToTrusted);
  const auto reply = rt_.ecall(seal_task(sealer, make_batch("c1", 0, three_beats())));
  const auto out = open_reply(reply, key_, "c1", 0);
  ASSERT_TRUE(out && out->ok());
  const auto& samples = std::get<hrv::IdentityOut>(out->value()).samples;
  const auto want = three_beats();
  EXPECT_TRUE(std::equal(samples.begin(), samples.end(), want.samples().begin(), want.samples().end()));
}

TEST_F(SessionedRuntime, ReplayedTaskIsRejected) {
  Sealer sealer(key_, Direction::kToTrusted);
  const auto task = seal_task(sealer, make_batch("c1", 0, three_beats()));
  ASSERT_TRUE(open_reply(rt_.ecall(task), key_, "c1", 0)->ok());
  const auto again = open_reply(rt_.ecall(task), key_, "c1", 0);
  ASSERT_TRUE(again);
  EXPECT_EQ(again->error(), ErrorCode::kAuthenticationFailure);
}

TEST_F(SessionedRuntime, CrossStreamAadIsRejected) {
  Sealer sealer(key_, Direction::kToTrusted);
  // Task sealed for (c1, 0) but claiming window 1 in the clear aad.
  auto batch = make_batch("c1", 0, three_beats());
  const ChannelAad lie{"c1", 1, Direction::kToTrusted};
  const auto task = sealer.seal(encode_task(batch), lie.encode());
  const auto out = open_reply(rt_.ecall(task), key_, "c1", 1);
  ASSERT_TRUE(out);
  EXPECT_EQ(out->error(), ErrorCode::kAuthenticationFailure);
  // Direction must be towards the trusted side.
  const ChannelAad wrong_dir{"c1", 0, Direction::kFromTrusted};
  const auto task2 = sealer.seal(encode_task(batch), wrong_dir.encode());
  EXPECT_EQ(open_reply(rt_.ecall(task2), key_, "", 0)->error(), ErrorCode::kAuthenticationFailure);
}

TEST_F(SessionedRuntime, WrongKeyGetsSealedFailure) {
  Sealer sealer(random_key(), Direction::kToTrusted);
  const auto out = open_reply(rt_.ecall(seal_task(sealer, make_batch("c1", 0, three_beats()))), key_, "c1", 0);
  ASSERT_TRUE(out);
  EXPECT_EQ(out->error(), ErrorCode::kAuthenticationFailure);
}

TEST(Runtime, AlgorithmErrorsComeBackSealed) {
  TrustedRuntime rt(kSdnn);
  const auto key = attest_and_establish(rt, measure_code(kSdnn));
  Sealer sealer(key, Direction::kToTrusted);
  hrv::RrSeries one("c1", {{kDefaultEpochMs, hrv::RrInterval::from_ms(800)}});
  const auto out = open_reply(rt.ecall(seal_task(sealer, make_batch("c1", 0, one))), key, "c1", 0);
  ASSERT_TRUE(out);
  EXPECT_EQ(out->error(), ErrorCode::kInsufficientData);
}

TEST(Host, SingleSlotLifecycle) {
  EnclaveHost host;
  EXPECT_EQ(code_of([&] { host.runtime(); }), ErrorCode::kNoEnclave);
  host.create(kSdnn);
  EXPECT_EQ(code_of([&] { host.create(kSdnn); }), ErrorCode::kEnclaveAlreadyLoaded);
  host.destroy();
  EXPECT_NO_THROW(host.create(kBands));
}

TEST(StateMachine, ShortSequencesFollowTheModel) {
  for (const auto& seq : testing::all_sequences(4)) {
    const auto check = testing::run_sequence(seq, kSdnn);
    EXPECT_TRUE(check.matches_model) << check.detail;
    EXPECT_EQ(check.accepted, testing::is_documented_order(seq)) << check.detail;
  }
}

TEST(Payload, TaskAndReplyRoundTrip) {
  const auto batch = make_batch("client-7", 3, three_beats("client-7"));
  const auto back = decode_task(encode_task(batch));
  EXPECT_EQ(back.client_id, batch.client_id);
  EXPECT_EQ(back.window_id, 3u);
  EXPECT_EQ(back.window_start_ms, batch.window_start_ms);
  EXPECT_EQ(back.samples, batch.samples);
  const auto beats = three_beats();
  for (const auto& o : {hrv::Outcome::success(hrv::SdnnOut{8.16496580927726}),
                        hrv::Outcome::success(hrv::BandsOut{1.5, 2.5, 2.5 / 1.5}),
                        hrv::Outcome::success(hrv::IdentityOut{{beats.samples().begin(), beats.samples().end()}}),
                        hrv::Outcome::failure(ErrorCode::kUndefinedRatio)}) {
    EXPECT_EQ(decode_reply(encode_reply(o)), o);
  }
  EXPECT_EQ(decode_reply(execute_task(hrv::Algorithm::kSdnn, Bytes{1, 2, 3})).error(),
            ErrorCode::kMalformedEnvelope);
}

TEST(Channel, TapSeesEveryTransferAndCloseStops) {
  RecordingTap tap;
  HostChannel ch(&tap);
  const Bytes a = {1, 2, 3}, b = {4, 5};
  EXPECT_EQ(ch.transfer(a), a);
  EXPECT_EQ(ch.transfer(b), b);
  EXPECT_EQ(tap.buffer_count(), 2u);
  EXPECT_EQ(tap.total_bytes(), 5u);
  EXPECT_EQ(ch.bytes_transferred(), 5u);
  ch.close();
  EXPECT_EQ(code_of([&] { ch.transfer(a); }), ErrorCode::kChannelClosed);
}

}  // namespace
}  // namespace cardiostream::enclave
