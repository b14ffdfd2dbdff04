#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace gapfill {

enum class SampleFormat { pcm16, float32 };

struct WavData {
  std::uint32_t sample_rate = 44100;
  SampleFormat format = SampleFormat::pcm16;
  std::uint16_t source_channels = 1;  // channels in the file; only the first is kept
  std::vector<double> samples;
};

// Reads 16-bit PCM or 32-bit float WAV (WAVE_FORMAT_EXTENSIBLE accepted).
// Multichannel input keeps the first channel. Throws io on failure and
// malformed_input on unsupported or corrupt content.
WavData read_wav(const std::filesystem::path& path);

// Writes mono; pcm16 samples are clipped to [-1, 1] and rounded.
void write_wav(const std::filesystem::path& path, const WavData& data);

}  // namespace gapfill
