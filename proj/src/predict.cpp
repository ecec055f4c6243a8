#include "coopliable/predict.hpp"

namespace coopliable {

Vector predict_centered(const PliableCoefs& coefs, const Matrix& x, const Matrix& z) {
    if (x.cols() != coefs.p() || z.cols() != coefs.k())
        throw DataError("predict: coefficient dimensions do not match inputs");
    if (x.rows() != z.rows()) throw DataError("predict: x and z row counts differ");
    Vector yhat = x * coefs.beta;
    // sum_j (x_j o Z) theta_j == rowwise dot of (Z theta^T) with x
    yhat.noalias() += ((z * coefs.theta.transpose()).cwiseProduct(x)).rowwise().sum();
    return yhat;
}

Vector predict(const PliableCoefs& coefs, const Matrix& x, const Matrix& z,
               const ColumnTransform& xt, const ColumnTransform& zt, double y_center) {
    Vector yhat = predict_centered(coefs, xt.apply(x), zt.apply(z));
    yhat.array() += y_center;
    return yhat;
}

Vector predict(const CoopFit& fit, const Matrix& x1, const Matrix& x2, const Matrix& z,
               const PreprocessRecord& rec) {
    const Matrix zp = rec.z.apply(z);
    Vector yhat = predict_centered({fit.beta1, fit.theta1}, rec.x1.apply(x1), zp);
    yhat += predict_centered({fit.beta2, fit.theta2}, rec.x2.apply(x2), zp);
    yhat.array() += rec.y_center;
    return yhat;
}

}  // namespace coopliable
