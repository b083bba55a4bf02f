#include "morl/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "checkpoint io assumes a little-endian host");

namespace morl {

namespace {

constexpr char kMagic[8] = {'M', 'O', 'R', 'L', 'C', 'K', 'P', '1'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ostream& os, T value) {
    os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& is) {
    T value{};
    is.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!is) throw std::runtime_error("checkpoint: truncated file");
    return value;
}

void write_string(std::ostream& os, const std::string& s) {
    write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(s.size()));
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& is) {
    const auto len = read_pod<std::uint32_t>(is);
    std::string s(len, '\0');
    is.read(s.data(), len);
    if (!is) throw std::runtime_error("checkpoint: truncated string");
    return s;
}

}  // namespace

PolicyNet PolicyCheckpoint::make_net() const {
    PolicyNet net(config);
    if (parameters.size() != net.parameter_count())
        throw std::runtime_error("checkpoint: parameter count inconsistent with config");
    net.unflatten(parameters);
    return net;
}

void save_checkpoint(std::ostream& os, const PolicyCheckpoint& ckpt) {
    os.write(kMagic, sizeof(kMagic));
    write_pod(os, kVersion);
    write_pod<std::int32_t>(os, ckpt.config.input_length);
    write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(ckpt.config.hidden_sizes.size()));
    for (int h : ckpt.config.hidden_sizes) write_pod<std::int32_t>(os, h);
    write_pod<std::uint8_t>(os, ckpt.config.activation == Activation::tanh ? 0 : 1);
    write_pod<std::int32_t>(os, ckpt.config.action_count);
    write_pod<std::int32_t>(os, ckpt.config.value_dim);
    write_pod<std::uint8_t>(os, ckpt.config.condition_on_weights ? 1 : 0);
    write_string(os, ckpt.env_name);
    write_string(os, ckpt.variant);
    write_pod(os, ckpt.gamma);
    write_pod(os, ckpt.seed);
    write_pod(os, ckpt.env_steps);
    write_pod<std::uint64_t>(os, ckpt.parameters.size());
    os.write(reinterpret_cast<const char*>(ckpt.parameters.data()),
             static_cast<std::streamsize>(ckpt.parameters.size() * sizeof(double)));
    if (!os) throw std::runtime_error("checkpoint: write failed");
}

PolicyCheckpoint load_checkpoint(std::istream& is) {
    char magic[8];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("checkpoint: bad magic");
    const auto version = read_pod<std::uint32_t>(is);
    if (version != kVersion)
        throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));

    PolicyCheckpoint ckpt;
    ckpt.config.input_length = read_pod<std::int32_t>(is);
    const auto layers = read_pod<std::uint32_t>(is);
    ckpt.config.hidden_sizes.clear();
    for (std::uint32_t i = 0; i < layers; ++i)
        ckpt.config.hidden_sizes.push_back(read_pod<std::int32_t>(is));
    ckpt.config.activation = read_pod<std::uint8_t>(is) == 0 ? Activation::tanh : Activation::relu;
    ckpt.config.action_count = read_pod<std::int32_t>(is);
    ckpt.config.value_dim = read_pod<std::int32_t>(is);
    ckpt.config.condition_on_weights = read_pod<std::uint8_t>(is) != 0;
    ckpt.env_name = read_string(is);
    ckpt.variant = read_string(is);
    ckpt.gamma = read_pod<double>(is);
    ckpt.seed = read_pod<std::uint64_t>(is);
    ckpt.env_steps = read_pod<std::uint64_t>(is);
    const auto count = read_pod<std::uint64_t>(is);
    ckpt.parameters.resize(count);
    is.read(reinterpret_cast<char*>(ckpt.parameters.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!is) throw std::runtime_error("checkpoint: truncated parameters");
    return ckpt;
}

void save_checkpoint_file(const std::string& path, const PolicyCheckpoint& ckpt) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("checkpoint: cannot open " + path + " for writing");
    save_checkpoint(os, ckpt);
}

PolicyCheckpoint load_checkpoint_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("checkpoint: cannot open " + path);
    return load_checkpoint(is);
}

}  // namespace morl
