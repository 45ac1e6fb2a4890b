#include "hardyq/specfun.hpp"

// The implementations are header templates; pre-instantiate the two scalar
// types the library actually uses so dependent TUs link against these.

namespace hardyq::specfun {

template double log_gamma<double>(double);
template long double log_gamma<long double>(long double);

template double digamma<double>(double);
template long double digamma<long double>(long double);

template double hyp2f1<double>(double, double, double, double, SeriesConfig);
template long double hyp2f1<long double>(long double, long double, long double,
                                         long double, SeriesConfig);

} // namespace hardyq::specfun
