#include "gapfill/wav_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "gapfill/error.hpp"

namespace gapfill {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t le16(const unsigned char* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }
std::uint32_t le32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>(v >> 8));
}
void put32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int s = 0; s < 32; s += 8) out.push_back(static_cast<unsigned char>((v >> s) & 0xFF));
}
void put_tag(std::vector<unsigned char>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

[[noreturn]] void malformed(const std::filesystem::path& path, const std::string& what) {
  throw Error(ErrorKind::malformed_input, path.string() + ": " + what);
}

}  // namespace

WavData read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 || std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    malformed(path, "not a RIFF/WAVE file");
  }

  WavData out;
  std::uint16_t format = 0, channels = 0, bits = 0;
  bool have_fmt = false;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = le32(chunk + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) malformed(path, "truncated chunk");
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) malformed(path, "short fmt chunk");
      const unsigned char* f = bytes.data() + body;
      format = le16(f);
      channels = le16(f + 2);
      out.sample_rate = le32(f + 4);
      bits = le16(f + 14);
      if (format == kFormatExtensible) {
        if (size < 40) malformed(path, "short extensible fmt chunk");
        format = le16(f + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) malformed(path, "data chunk before fmt chunk");
      if (channels == 0) malformed(path, "zero channels");
      std::size_t width = 0;
      if (format == kFormatPcm && bits == 16) {
        out.format = SampleFormat::pcm16;
        width = 2;
      } else if (format == kFormatFloat && bits == 32) {
        out.format = SampleFormat::float32;
        width = 4;
      } else {
        malformed(path, "unsupported sample format (need 16-bit PCM or 32-bit float)");
      }
      out.source_channels = channels;
      const std::size_t stride = width * channels;
      const std::size_t frames = size / stride;
      out.samples.resize(frames);
      const unsigned char* d = bytes.data() + body;
      for (std::size_t i = 0; i < frames; ++i) {
        const unsigned char* s = d + i * stride;
        if (out.format == SampleFormat::pcm16) {
          out.samples[i] = static_cast<std::int16_t>(le16(s)) / 32768.0;
        } else {
          const std::uint32_t raw = le32(s);
          float v;
          std::memcpy(&v, &raw, sizeof v);
          out.samples[i] = v;
        }
      }
      return out;
    }
    pos = body + size + (size & 1u);
  }
  malformed(path, "no data chunk");
}

void write_wav(const std::filesystem::path& path, const WavData& data) {
  const bool pcm = data.format == SampleFormat::pcm16;
  const std::uint16_t width = pcm ? 2 : 4;
  const auto data_bytes = static_cast<std::uint32_t>(data.samples.size() * width);
  std::vector<unsigned char> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put32(out, 16);
  put16(out, pcm ? kFormatPcm : kFormatFloat);
  put16(out, 1);
  put32(out, data.sample_rate);
  put32(out, data.sample_rate * width);
  put16(out, width);
  put16(out, static_cast<std::uint16_t>(width * 8));
  put_tag(out, "data");
  put32(out, data_bytes);
  for (double v : data.samples) {
    if (pcm) {
      const double c = std::clamp(v, -1.0, 1.0);
      const long q = std::clamp(std::lround(c * 32768.0), -32768L, 32767L);
      put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
    } else {
      const auto f = static_cast<float>(v);
      std::uint32_t raw;
      std::memcpy(&raw, &f, sizeof raw);
      put32(out, raw);
    }
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::io, "cannot write " + path.string());
  file.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!file) throw Error(ErrorKind::io, "write failed for " + path.string());
}

}  // namespace gapfill
