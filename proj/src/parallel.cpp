#include "vdpkit/parallel.hpp"

#ifdef VDPKIT_HAVE_OPENMP
#include <omp.h>
#endif

namespace vdp {

bool parallel_available() {
#ifdef VDPKIT_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

int parallel_threads() {
#ifdef VDPKIT_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace vdp
