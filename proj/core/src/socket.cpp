#include "aai/socket.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace aai {

namespace {

std::string errno_text() { return std::strerror(errno); }

}  // namespace

Socket& Socket::operator=(Socket&& o) noexcept {
  if (this != &o) {
    close();
    fd_ = o.fd_;
    o.fd_ = -1;
  }
  return *this;
}

void Socket::send_all(std::span<const std::uint8_t> bytes) {
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t n = ::send(fd_, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::runtime_error("send failed: " + errno_text());
    }
    sent += static_cast<std::size_t>(n);
  }
}

void Socket::send_all(std::string_view text) {
  send_all(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::size_t Socket::recv_some(std::vector<std::uint8_t>& buffer, std::size_t max) {
  const std::size_t old = buffer.size();
  buffer.resize(old + max);
  for (;;) {
    const ssize_t n = ::recv(fd_, buffer.data() + old, max, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n < 0) {
      buffer.resize(old);
      if (errno == ECONNRESET || errno == EBADF || errno == ENOTCONN) return 0;
      throw std::runtime_error("recv failed: " + errno_text());
    }
    buffer.resize(old + static_cast<std::size_t>(n));
    return static_cast<std::size_t>(n);
  }
}

void Socket::shutdown() {
  if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
}

void Socket::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

Socket connect_tcp(const std::string& host, int port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (const int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
    throw ConnectError("cannot resolve " + host + ": " + gai_strerror(rc));
  }
  std::string last = "no addresses";
  for (addrinfo* a = res; a; a = a->ai_next) {
    Socket s(::socket(a->ai_family, a->ai_socktype, a->ai_protocol));
    if (!s.valid()) continue;
    if (::connect(s.fd(), a->ai_addr, a->ai_addrlen) == 0) {
      ::freeaddrinfo(res);
      const int one = 1;
      ::setsockopt(s.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
      return s;
    }
    last = errno_text();
  }
  ::freeaddrinfo(res);
  throw ConnectError("cannot connect to " + host + ":" + service + ": " + last);
}

Listener::Listener(int port, const std::string& host) {
  socket_ = Socket(::socket(AF_INET, SOCK_STREAM, 0));
  if (!socket_.valid()) throw std::runtime_error("socket failed: " + errno_text());
  const int one = 1;
  ::setsockopt(socket_.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) throw std::runtime_error("bad listen address " + host);
  if (::bind(socket_.fd(), reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    throw std::runtime_error("cannot bind port " + std::to_string(port) + ": " + errno_text());
  }
  if (::listen(socket_.fd(), 16) != 0) throw std::runtime_error("listen failed: " + errno_text());
  socklen_t len = sizeof addr;
  ::getsockname(socket_.fd(), reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

std::optional<Socket> Listener::accept(int timeout_ms) {
  if (!socket_.valid()) return std::nullopt;
  pollfd p{socket_.fd(), POLLIN, 0};
  const int rc = ::poll(&p, 1, timeout_ms);
  if (rc <= 0 || !(p.revents & POLLIN)) return std::nullopt;
  const int fd = ::accept(socket_.fd(), nullptr, nullptr);
  if (fd < 0) return std::nullopt;
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return Socket(fd);
}

TcpChannel::TcpChannel(Socket socket, std::vector<std::uint8_t> pending)
    : socket_(std::move(socket)), buffer_(std::move(pending)) {}

void TcpChannel::send(const Message& m) { socket_.send_all(encode_message(m, encoding_)); }

std::optional<Message> TcpChannel::receive() {
  for (;;) {
    std::size_t used = 0;
    std::optional<Message> m;
    try {
      m = try_decode_message(buffer_, used);
    } catch (const ProtocolError&) {
      // an unknown type still has a known extent
      if (used > 0) {
        buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(used));
      } else {
        buffer_.clear();
      }
      throw;
    }
    if (m) {
      buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(used));
      return m;
    }
    if (socket_.recv_some(buffer_) == 0) {
      if (buffer_.empty()) return std::nullopt;
      buffer_.clear();
      throw ProtocolError(error_code::kMalformedFrame, "connection closed inside a frame");
    }
  }
}

}  // namespace aai
