#pragma once

// Core parameter types shared by the analytic layer, the slot simulator and
// the CLI. Channel gains are stored in linear scale; dB appears only at I/O
// boundaries.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace ccrn {

enum class Sensing { IS, CS };
enum class Protocol { ARC, RBRC, NRBRC, NC };

inline std::string to_string(Sensing s) {
  return s == Sensing::IS ? "IS" : "CS";
}

inline std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::ARC: return "ARC";
    case Protocol::RBRC: return "RBRC";
    case Protocol::NRBRC: return "NRBRC";
    case Protocol::NC: return "NC";
  }
  throw std::logic_error("bad protocol enum");
}

inline Sensing sensing_from_string(const std::string& s) {
  if (s == "IS") return Sensing::IS;
  if (s == "CS") return Sensing::CS;
  throw std::invalid_argument("unknown sensing mode: " + s);
}

inline Protocol protocol_from_string(const std::string& s) {
  if (s == "ARC") return Protocol::ARC;
  if (s == "RBRC") return Protocol::RBRC;
  if (s == "NRBRC") return Protocol::NRBRC;
  if (s == "NC") return Protocol::NC;
  throw std::invalid_argument("unknown protocol: " + s);
}

inline double db_to_linear(double x_db) {
  return std::pow(10.0, x_db / 10.0);
}

inline double linear_to_db(double x) {
  return 10.0 * std::log10(x);
}

// Average channel power gains (linear) for the six link classes: direct
// PU link, PU source to SU destinations, PU source to SU sources, SU
// sources to SU destinations, SU sources to PU destination, SU source to
// other SU sources.
struct ChannelProfile {
  double sigma_PD2 = 1.0;
  double sigma_PR2 = 1.0;
  double sigma_PS2 = 1.0;
  double sigma_SR2 = 1.0;
  double sigma_SD2 = 1.0;
  double sigma_SS2 = 1.0;

  void validate() const {
    auto chk = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string("channel gain ") + name +
                                    " must be strictly positive");
    };
    chk(sigma_PD2, "sigma_PD2");
    chk(sigma_PR2, "sigma_PR2");
    chk(sigma_PS2, "sigma_PS2");
    chk(sigma_SR2, "sigma_SR2");
    chk(sigma_SD2, "sigma_SD2");
    chk(sigma_SS2, "sigma_SS2");
  }
};

struct SystemConfig {
  int L = 1;                 // number of secondary users
  double P_P = 0.1;          // PU transmit power, W
  double P_S = 0.1;          // SU transmit power, W
  double sigma_N2 = 0.1;     // noise power, W
  ChannelProfile channels;
  double beta = 0.1;         // SINR threshold
  double p_d = 0.8;          // per-SU detection probability
  double p_f = 0.1;          // per-SU false-alarm probability
  double q = 0.5;            // SU transmission probability
  double lambda_P = 0.1;     // PU arrival rate, packets/slot
  Sensing sensing = Sensing::IS;
  Protocol protocol = Protocol::ARC;

  void validate() const {
    if (L < 1) throw std::invalid_argument("L must be >= 1");
    auto pos = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(name) +
                                    " must be strictly positive");
    };
    pos(P_P, "P_P");
    pos(P_S, "P_S");
    pos(sigma_N2, "sigma_N2");
    pos(beta, "beta");
    channels.validate();
    auto prob = [](double v, const char* name) {
      if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument(std::string(name) + " must be in [0,1]");
    };
    prob(p_d, "p_d");
    prob(p_f, "p_f");
    prob(q, "q");
    prob(lambda_P, "lambda_P");
  }
};

// Baseline operating point: 0.1 W transmit powers and noise, -13 dB direct
// PU link, -10 dB for the SU-class links, beta = 0.1, p_d = 0.8, p_f = 0.1.
// sigma_SS2 has no standard value; it defaults to -10 dB like the other
// SU-class links and is overridable in config files.
inline SystemConfig default_config() {
  SystemConfig cfg;
  cfg.L = 1;
  cfg.P_P = 0.1;
  cfg.P_S = 0.1;
  cfg.sigma_N2 = 0.1;
  cfg.channels.sigma_PD2 = db_to_linear(-13.0);
  cfg.channels.sigma_PR2 = db_to_linear(0.0);
  cfg.channels.sigma_PS2 = db_to_linear(-10.0);
  cfg.channels.sigma_SR2 = db_to_linear(-10.0);
  cfg.channels.sigma_SD2 = db_to_linear(-10.0);
  cfg.channels.sigma_SS2 = db_to_linear(-10.0);
  cfg.beta = 0.1;
  cfg.p_d = 0.8;
  cfg.p_f = 0.1;
  cfg.q = 0.5;
  cfg.lambda_P = 0.1;
  cfg.sensing = Sensing::IS;
  cfg.protocol = Protocol::ARC;
  return cfg;
}

struct ThroughputReport {
  double mu_P = 0.0;
  double mu_S_bound = 0.0;
  bool stable = false;
  std::optional<double> D_P;      // slots; absent when unstable
  std::optional<double> q_star;   // present only for optimization runs
};

}  // namespace ccrn
