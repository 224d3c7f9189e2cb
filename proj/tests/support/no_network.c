/* LD_PRELOAD shim for the test suite: loopback traffic is allowed, any
 * other connect() or addressed sendto() ends the process with status 86. */
#define _GNU_SOURCE
#include <arpa/inet.h>
#include <dlfcn.h>
#include <netinet/in.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

static int is_local(const struct sockaddr* addr) {
  if (addr == NULL) return 1;
  switch (addr->sa_family) {
    case AF_UNIX:
    case AF_UNSPEC:
      return 1;
    case AF_INET: {
      const struct sockaddr_in* in = (const struct sockaddr_in*)addr;
      return (ntohl(in->sin_addr.s_addr) >> 24) == 127;
    }
    case AF_INET6: {
      const struct sockaddr_in6* in6 = (const struct sockaddr_in6*)addr;
      if (IN6_IS_ADDR_LOOPBACK(&in6->sin6_addr)) return 1;
      if (IN6_IS_ADDR_V4MAPPED(&in6->sin6_addr)) return in6->sin6_addr.s6_addr[12] == 127;
      return 0;
    }
    default:
      return 0;
  }
}

static void refuse(const char* what, const struct sockaddr* addr) {
  char text[INET6_ADDRSTRLEN] = "?";
  if (addr->sa_family == AF_INET) {
    inet_ntop(AF_INET, &((const struct sockaddr_in*)addr)->sin_addr, text, sizeof text);
  } else if (addr->sa_family == AF_INET6) {
    inet_ntop(AF_INET6, &((const struct sockaddr_in6*)addr)->sin6_addr, text, sizeof text);
  }
  fprintf(stderr, "no_network: blocked %s to %s\n", what, text);
  _exit(86);
}

int connect(int fd, const struct sockaddr* addr, socklen_t len) {
  static int (*real)(int, const struct sockaddr*, socklen_t) = NULL;
  if (real == NULL) real = (int (*)(int, const struct sockaddr*, socklen_t))dlsym(RTLD_NEXT, "connect");
  if (!is_local(addr)) refuse("connect", addr);
  return real(fd, addr, len);
}

ssize_t sendto(int fd, const void* buf, size_t n, int flags, const struct sockaddr* addr,
               socklen_t len) {
  static ssize_t (*real)(int, const void*, size_t, int, const struct sockaddr*, socklen_t) = NULL;
  if (real == NULL) {
    real = (ssize_t(*)(int, const void*, size_t, int, const struct sockaddr*, socklen_t))dlsym(
        RTLD_NEXT, "sendto");
  }
  if (!is_local(addr)) refuse("sendto", addr);
  return real(fd, buf, n, flags, addr, len);
}
