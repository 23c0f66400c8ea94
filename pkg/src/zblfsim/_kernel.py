"""Hot simulation loop: derivative pipeline + fixed-step RK4 integration.

Written in Cython pure-Python mode.  setup.py compiles this file into a C
extension (the fast path); if the extension is absent the same source runs
interpreted.  Both paths execute the identical floating-point operation
sequence (the extension is built with -ffp-contract=off), so logs match
across backends bit for bit.

The caller packs all configuration into two flat arrays using the CF_*/IC_*
index constants below, preallocates the log table and scratch buffers, and
calls run_loop.  Everything here is scalar arithmetic on memoryviews; no
allocation happens inside the loop.
"""

import cython

if cython.compiled:
    from cython.cimports.libc.math import cos, exp, isfinite, log, sin, sqrt
else:
    from math import cos, exp, isfinite, log, sin, sqrt

KERNEL_COMPILED = cython.compiled

# --- float config layout -------------------------------------------------
CF_DT = 0
CF_TC = 1
CF_BETA = 2
CF_K1 = 3
CF_K2 = 4
CF_A_YOUNG = 5
CF_SIGMA_C = 6
CF_ETA_C = 7
CF_PSI = 8
CF_Q_COST = 9
CF_R_COST = 10
CF_SIGMA_A = 11
CF_ETA_A = 12
CF_K_A = 13
CF_INV_WIDTH2 = 14
CF_GUARD = 15
CF_P1 = 16
CF_P2 = 17
CF_P3 = 18
CF_GA = 19
CF_GB = 20
CF_TR_AMP0 = 21
CF_TR_OM0 = 22
CF_TR_OFF0 = 23
CF_TR_AMP1 = 24
CF_TR_OM1 = 25
CF_TR_OFF1 = 26
CF_B_A0 = 27
CF_B_B0 = 28
CF_B_OM0 = 29
CF_B_A1 = 30
CF_B_B1 = 31
CF_B_OM1 = 32
CF_UB_A0 = 33
CF_UB_B0 = 34
CF_UB_OM0 = 35
CF_LB_A0 = 36
CF_LB_B0 = 37
CF_LB_OM0 = 38
CF_UB_A1 = 39
CF_UB_B1 = 40
CF_UB_OM1 = 41
CF_LB_A1 = 42
CF_LB_B1 = 43
CF_LB_OM1 = 44
CF_DIST_AMP0 = 45
CF_DIST_AMP1 = 46
CF_DIST_FREQ = 47
N_CF = 48

# --- int config layout ----------------------------------------------------
IC_NSTEPS = 0
IC_NEURONS = 1
IC_TR_KIND0 = 2
IC_TR_KIND1 = 3
IC_B_FAM0 = 4
IC_B_FAM1 = 5
IC_UB_FAM0 = 6
IC_LB_FAM0 = 7
IC_UB_FAM1 = 8
IC_LB_FAM1 = 9
IC_CMODE = 10
IC_DIST_MODE = 11
IC_SUBSTEPS = 12
N_IC = 13

TR_SIN = 0
TR_COS = 1
TR_CONST = 2

FAM_CONST = 0
FAM_SIN = 1
FAM_COS = 2
FAM_DERIVED = 3

CMODE_PER_JOINT = 0
CMODE_SCALAR_MIN = 1

DIST_ZERO = 0
DIST_SIN = 1

# --- log table layout -----------------------------------------------------
N_LOG_COLS = 31
# extra scratch slots appended to the row buffer (not logged)
ROWX_SC_NORM2 = 31
ROWX_SA_NORM2 = 32
N_ROW_BUF = 33

# --- out_info layout --------------------------------------------------------
OI_SC_MIN = 0
OI_SC_MAX = 1
OI_VIOL_TIME = 2
OI_VIOL_JOINT = 3
OI_N_ROWS = 4
OI_SA_MAX = 5
N_OI = 6

STATUS_OK = 0
STATUS_VIOLATION = 1
STATUS_NONFINITE = 2


@cython.cfunc
@cython.boundscheck(False)
@cython.wraparound(False)
def _fam_val(fam: cython.long, a: cython.double, b: cython.double,
             om: cython.double, t: cython.double) -> cython.double:
    if fam == FAM_SIN:
        return a + b * sin(om * t)
    if fam == FAM_COS:
        return a + b * cos(om * t)
    return a


@cython.cfunc
@cython.boundscheck(False)
@cython.wraparound(False)
def _fam_dot(fam: cython.long, a: cython.double, b: cython.double,
             om: cython.double, t: cython.double) -> cython.double:
    if fam == FAM_SIN:
        return b * om * cos(om * t)
    if fam == FAM_COS:
        return -b * om * sin(om * t)
    return 0.0


@cython.cfunc
@cython.boundscheck(False)
@cython.wraparound(False)
def _deriv(cfg: cython.double[::1], icfg: cython.long[::1],
           ca: cython.double[:, ::1], cc: cython.double[:, ::1],
           x: cython.double[::1], t: cython.double,
           ad0: cython.double, ad1: cython.double,
           dx: cython.double[::1], row: cython.double[::1],
           sa: cython.double[::1], lam: cython.double[::1]) -> cython.int:
    """Evaluate the full closed-loop derivative at (x, t).

    ad0/ad1 hold the frozen per-step estimate of the virtual-control rate
    used in the critic's feature derivative.  Fills dx (state derivative)
    and row (log columns + scratch norms).  Returns STATUS_VIOLATION and
    records (t, joint) in row[0:2] when a barrier denominator falls below
    the guard.
    """
    k: cython.Py_ssize_t = icfg[IC_NEURONS]
    woff: cython.Py_ssize_t = 4 + 2 * k
    j: cython.Py_ssize_t

    tc: cython.double = cfg[CF_TC]
    beta: cython.double = cfg[CF_BETA]
    gain_k1: cython.double = cfg[CF_K1]
    gain_k2: cython.double = cfg[CF_K2]
    a_young: cython.double = cfg[CF_A_YOUNG]
    sigma_c: cython.double = cfg[CF_SIGMA_C]
    eta_c: cython.double = cfg[CF_ETA_C]
    psi: cython.double = cfg[CF_PSI]
    q_cost: cython.double = cfg[CF_Q_COST]
    r_cost: cython.double = cfg[CF_R_COST]
    sigma_a: cython.double = cfg[CF_SIGMA_A]
    eta_a: cython.double = cfg[CF_ETA_A]
    k_a: cython.double = cfg[CF_K_A]
    inv_w2: cython.double = cfg[CF_INV_WIDTH2]
    guard: cython.double = cfg[CF_GUARD]
    p1: cython.double = cfg[CF_P1]
    p2: cython.double = cfg[CF_P2]
    p3: cython.double = cfg[CF_P3]
    ga: cython.double = cfg[CF_GA]
    gb: cython.double = cfg[CF_GB]

    q0: cython.double = x[0]
    q1: cython.double = x[1]
    v0: cython.double = x[2]
    v1: cython.double = x[3]

    # desired trajectory
    kind0: cython.long = icfg[IC_TR_KIND0]
    kind1: cython.long = icfg[IC_TR_KIND1]
    amp: cython.double = cfg[CF_TR_AMP0]
    om: cython.double = cfg[CF_TR_OM0]
    off: cython.double = cfg[CF_TR_OFF0]
    qd0: cython.double
    qdv0: cython.double
    qd1: cython.double
    qdv1: cython.double
    sv: cython.double
    cv: cython.double
    if kind0 == TR_SIN:
        sv = sin(om * t)
        cv = cos(om * t)
        qd0 = off + amp * sv
        qdv0 = amp * om * cv
    elif kind0 == TR_COS:
        sv = sin(om * t)
        cv = cos(om * t)
        qd0 = off + amp * cv
        qdv0 = -amp * om * sv
    else:
        qd0 = off
        qdv0 = 0.0
    amp = cfg[CF_TR_AMP1]
    om = cfg[CF_TR_OM1]
    off = cfg[CF_TR_OFF1]
    if kind1 == TR_SIN:
        sv = sin(om * t)
        cv = cos(om * t)
        qd1 = off + amp * sv
        qdv1 = amp * om * cv
    elif kind1 == TR_COS:
        sv = sin(om * t)
        cv = cos(om * t)
        qd1 = off + amp * cv
        qdv1 = -amp * om * sv
    else:
        qd1 = off
        qdv1 = 0.0

    # shifting function
    gam: cython.double
    gdot: cython.double
    rel: cython.double
    if t < tc:
        rel = (tc - t) / tc
        gam = 1.0 - rel * rel * rel
        gdot = 3.0 * (tc - t) * (tc - t) / (tc * tc * tc)
    else:
        gam = 1.0
        gdot = 0.0

    # error bounds
    fam: cython.long = icfg[IC_B_FAM0]
    kc0: cython.double
    kd0: cython.double
    kc1: cython.double
    kd1: cython.double
    vu: cython.double
    vl: cython.double
    if fam == FAM_DERIVED:
        vu = _fam_val(icfg[IC_UB_FAM0], cfg[CF_UB_A0], cfg[CF_UB_B0], cfg[CF_UB_OM0], t) - qd0
        vl = qd0 - _fam_val(icfg[IC_LB_FAM0], cfg[CF_LB_A0], cfg[CF_LB_B0], cfg[CF_LB_OM0], t)
        if vu <= vl:
            kc0 = vu
            kd0 = _fam_dot(icfg[IC_UB_FAM0], cfg[CF_UB_A0], cfg[CF_UB_B0], cfg[CF_UB_OM0], t) - qdv0
        else:
            kc0 = vl
            kd0 = qdv0 - _fam_dot(icfg[IC_LB_FAM0], cfg[CF_LB_A0], cfg[CF_LB_B0], cfg[CF_LB_OM0], t)
    else:
        kc0 = _fam_val(fam, cfg[CF_B_A0], cfg[CF_B_B0], cfg[CF_B_OM0], t)
        kd0 = _fam_dot(fam, cfg[CF_B_A0], cfg[CF_B_B0], cfg[CF_B_OM0], t)
    fam = icfg[IC_B_FAM1]
    if fam == FAM_DERIVED:
        vu = _fam_val(icfg[IC_UB_FAM1], cfg[CF_UB_A1], cfg[CF_UB_B1], cfg[CF_UB_OM1], t) - qd1
        vl = qd1 - _fam_val(icfg[IC_LB_FAM1], cfg[CF_LB_A1], cfg[CF_LB_B1], cfg[CF_LB_OM1], t)
        if vu <= vl:
            kc1 = vu
            kd1 = _fam_dot(icfg[IC_UB_FAM1], cfg[CF_UB_A1], cfg[CF_UB_B1], cfg[CF_UB_OM1], t) - qdv1
        else:
            kc1 = vl
            kd1 = qdv1 - _fam_dot(icfg[IC_LB_FAM1], cfg[CF_LB_A1], cfg[CF_LB_B1], cfg[CF_LB_OM1], t)
    else:
        kc1 = _fam_val(fam, cfg[CF_B_A1], cfg[CF_B_B1], cfg[CF_B_OM1], t)
        kd1 = _fam_dot(fam, cfg[CF_B_A1], cfg[CF_B_B1], cfg[CF_B_OM1], t)

    cmode: cython.long = icfg[IC_CMODE]
    if cmode == CMODE_SCALAR_MIN:
        if kc1 < kc0:
            kc0 = kc1
            kd0 = kd1
        else:
            kc1 = kc0
            kd1 = kd0

    # tracking errors and transformed errors
    z10: cython.double = q0 - qd0
    z11: cython.double = q1 - qd1
    z1g0: cython.double = gam * z10
    z1g1: cython.double = gam * z11
    z1sq: cython.double = z10 * z10 + z11 * z11

    den0: cython.double
    den1: cython.double
    if cmode == CMODE_SCALAR_MIN:
        den0 = kc0 * kc0 - (z1g0 * z1g0 + z1g1 * z1g1)
        den1 = den0
    else:
        den0 = kc0 * kc0 - z1g0 * z1g0
        den1 = kc1 * kc1 - z1g1 * z1g1
    if den0 < guard or den1 < guard:
        row[0] = t
        row[1] = 0.0 if den0 <= den1 else 1.0
        return STATUS_VIOLATION

    # virtual control and velocity-level error
    al0: cython.double = (-gain_k1 * z10
                          - a_young * gdot * gdot * z10 * z1sq / (beta * den0)
                          + qdv0 + (kd0 / kc0) * z10)
    al1: cython.double = (-gain_k1 * z11
                          - a_young * gdot * gdot * z11 * z1sq / (beta * den1)
                          + qdv1 + (kd1 / kc1) * z11)
    z20: cython.double = v0 - al0
    z21: cython.double = v1 - al1

    # actor network
    was0: cython.double = 0.0
    was1: cython.double = 0.0
    sasq: cython.double = 0.0
    d0: cython.double
    d1: cython.double
    d2: cython.double
    d3: cython.double
    d4: cython.double
    d5: cython.double
    d6: cython.double
    d7: cython.double
    s: cython.double
    for j in range(k):
        d0 = q0 - ca[j, 0]
        d1 = q1 - ca[j, 1]
        d2 = v0 - ca[j, 2]
        d3 = v1 - ca[j, 3]
        d4 = z10 - ca[j, 4]
        d5 = z11 - ca[j, 5]
        d6 = z20 - ca[j, 6]
        d7 = z21 - ca[j, 7]
        s = exp(-(d0 * d0 + d1 * d1 + d2 * d2 + d3 * d3
                  + d4 * d4 + d5 * d5 + d6 * d6 + d7 * d7) * inv_w2)
        sa[j] = s
        was0 += x[4 + 2 * j] * s
        was1 += x[4 + 2 * j + 1] * s
        sasq += s * s

    # torque
    tau0: cython.double = was0 - gain_k2 * z20 - gam * z1g0 / (beta * den0)
    tau1: cython.double = was1 - gain_k2 * z21 - gam * z1g1 / (beta * den1)

    # disturbance
    db0: cython.double = 0.0
    db1: cython.double = 0.0
    if icfg[IC_DIST_MODE] == DIST_SIN:
        sv = sin(cfg[CF_DIST_FREQ] * t)
        db0 = cfg[CF_DIST_AMP0] * sv
        db1 = cfg[CF_DIST_AMP1] * sv

    # rigid-body dynamics
    c2: cython.double = cos(q1)
    m11: cython.double = p1 + 2.0 * p2 * c2
    m12: cython.double = p3 + p2 * c2
    m22: cython.double = p3
    h: cython.double = p2 * sin(q1)
    cv0: cython.double = (-h * v1) * v0 + (-h * (v0 + v1)) * v1
    cv1: cython.double = (h * v0) * v0
    s12: cython.double = sin(q0 + q1)
    g1: cython.double = ga * sin(q0) + gb * s12
    g2: cython.double = gb * s12
    rhs0: cython.double = tau0 + db0 - cv0 - g1
    rhs1: cython.double = tau1 + db1 - cv1 - g2
    det: cython.double = m11 * m22 - m12 * m12
    acc0: cython.double = (m22 * rhs0 - m12 * rhs1) / det
    acc1: cython.double = (m11 * rhs1 - m12 * rhs0) / det

    # instantaneous cost
    rcost: cython.double = (q_cost * (z10 * z10 + z11 * z11 + z20 * z20 + z21 * z21)
                            + r_cost * (tau0 * tau0 + tau1 * tau1))

    # critic network and TD machinery
    zcd0: cython.double = v0 - qdv0
    zcd1: cython.double = v1 - qdv1
    zcd2: cython.double = acc0 - ad0
    zcd3: cython.double = acc1 - ad1
    jhat: cython.double = 0.0
    scsq: cython.double = 0.0
    wcl: cython.double = 0.0
    e0: cython.double
    e1: cython.double
    e2: cython.double
    e3: cython.double
    dotv: cython.double
    lj: cython.double
    wcj: cython.double
    for j in range(k):
        e0 = z10 - cc[j, 0]
        e1 = z11 - cc[j, 1]
        e2 = z20 - cc[j, 2]
        e3 = z21 - cc[j, 3]
        s = exp(-(e0 * e0 + e1 * e1 + e2 * e2 + e3 * e3) * inv_w2)
        dotv = e0 * zcd0 + e1 * zcd1 + e2 * zcd2 + e3 * zcd3
        lj = -s / psi - 2.0 * inv_w2 * s * dotv
        lam[j] = lj
        wcj = x[woff + j]
        jhat += wcj * s
        wcl += wcj * lj
        scsq += s * s
    delta: cython.double = rcost + wcl

    # weight adaptation rates
    for j in range(k):
        dx[woff + j] = -sigma_c * delta * lam[j] - sigma_c * eta_c * x[woff + j]
    vs0: cython.double = was0 + z20 / sigma_a + k_a * jhat
    vs1: cython.double = was1 + z21 / sigma_a + k_a * jhat
    for j in range(k):
        s = sa[j]
        dx[4 + 2 * j] = -sigma_a * vs0 * s - sigma_a * eta_a * x[4 + 2 * j]
        dx[4 + 2 * j + 1] = -sigma_a * vs1 * s - sigma_a * eta_a * x[4 + 2 * j + 1]

    dx[0] = v0
    dx[1] = v1
    dx[2] = acc0
    dx[3] = acc1

    # log row
    wa2: cython.double = 0.0
    wc2: cython.double = 0.0
    for j in range(k):
        wa2 += x[4 + 2 * j] * x[4 + 2 * j] + x[4 + 2 * j + 1] * x[4 + 2 * j + 1]
        wc2 += x[woff + j] * x[woff + j]
    v1bar: cython.double
    if cmode == CMODE_SCALAR_MIN:
        v1bar = log(kc0 * kc0 / den0) / (2.0 * beta)
    else:
        v1bar = (log(kc0 * kc0 / den0) + log(kc1 * kc1 / den1)) / (2.0 * beta)
    row[0] = t
    row[1] = q0
    row[2] = q1
    row[3] = v0
    row[4] = v1
    row[5] = qd0
    row[6] = qd1
    row[7] = qdv0
    row[8] = qdv1
    row[9] = z10
    row[10] = z11
    row[11] = z20
    row[12] = z21
    row[13] = z1g0
    row[14] = z1g1
    row[15] = gam
    row[16] = kc0
    row[17] = kc1
    row[18] = al0
    row[19] = al1
    row[20] = tau0
    row[21] = tau1
    row[22] = rcost
    row[23] = delta
    row[24] = jhat
    row[25] = sqrt(wa2)
    row[26] = sqrt(wc2)
    row[27] = v1bar
    row[28] = v1bar + 0.5 * (z20 * (m11 * z20 + m12 * z21)
                             + z21 * (m12 * z20 + m22 * z21))
    row[29] = wc2 / (2.0 * sigma_c)
    row[30] = 0.5 * wa2
    row[ROWX_SC_NORM2] = scsq
    row[ROWX_SA_NORM2] = sasq
    return STATUS_OK


@cython.boundscheck(False)
@cython.wraparound(False)
def deriv_probe(cfg: cython.double[::1], icfg: cython.long[::1],
                ca: cython.double[:, ::1], cc: cython.double[:, ::1],
                x: cython.double[::1], t: cython.double,
                ad0: cython.double, ad1: cython.double,
                dx: cython.double[::1], row: cython.double[::1],
                sa: cython.double[::1], lam: cython.double[::1]) -> cython.int:
    """Expose one derivative evaluation for tests and cross-checks."""
    return _deriv(cfg, icfg, ca, cc, x, t, ad0, ad1, dx, row, sa, lam)


@cython.boundscheck(False)
@cython.wraparound(False)
def run_loop(cfg: cython.double[::1], icfg: cython.long[::1],
             ca: cython.double[:, ::1], cc: cython.double[:, ::1],
             x: cython.double[::1], table: cython.double[:, ::1],
             out_info: cython.double[::1],
             kb1: cython.double[::1], kb2: cython.double[::1],
             kb3: cython.double[::1], kb4: cython.double[::1],
             xtmp: cython.double[::1], rowb: cython.double[::1],
             sab: cython.double[::1], lamb: cython.double[::1]) -> cython.int:
    """Integrate the closed loop with RK4, filling the log table.

    x holds the augmented state [q, q̇, actor weights (row-major), critic
    weights] and is advanced in place.  The log grid has spacing dt; between
    log samples the integrator takes `substeps` RK4 steps of h = dt/substeps
    (the adaptation laws are much stiffer than the arm during the activation
    transient).  One row is written per log step plus a final row at t_end.
    Stops early on a barrier violation (status 1) or a non-finite state
    (status 2); out_info carries the violation time/joint, the observed
    ‖S_c‖² range, and the accepted row count.
    """
    n_steps: cython.Py_ssize_t = icfg[IC_NSTEPS]
    substeps: cython.Py_ssize_t = icfg[IC_SUBSTEPS]
    k: cython.Py_ssize_t = icfg[IC_NEURONS]
    nstate: cython.Py_ssize_t = 4 + 3 * k
    ncols: cython.Py_ssize_t = N_LOG_COLS
    i: cython.Py_ssize_t
    step: cython.Py_ssize_t
    sub: cython.Py_ssize_t

    dt: cython.double = cfg[CF_DT]
    h: cython.double = dt / substeps
    half: cython.double = 0.5 * h
    sixth: cython.double = h / 6.0

    ap0: cython.double = 0.0    # virtual control one integration step back
    ap1: cython.double = 0.0
    app0: cython.double = 0.0   # two integration steps back
    app1: cython.double = 0.0
    nhist: cython.Py_ssize_t = 0
    ad0: cython.double
    ad1: cython.double

    scmin: cython.double = 1e300
    scmax: cython.double = 0.0
    samax: cython.double = 0.0
    status: cython.int = STATUS_OK
    nrows: cython.Py_ssize_t = 0
    st: cython.int
    t: cython.double
    allfinite: cython.bint

    out_info[OI_VIOL_TIME] = -1.0
    out_info[OI_VIOL_JOINT] = -1.0

    for step in range(n_steps):
        for sub in range(substeps):
            t = (step * substeps + sub) * h
            if nhist >= 2:
                ad0 = (ap0 - app0) / h
                ad1 = (ap1 - app1) / h
            else:
                ad0 = 0.0
                ad1 = 0.0

            st = _deriv(cfg, icfg, ca, cc, x, t, ad0, ad1, kb1, rowb, sab, lamb)
            if st != STATUS_OK:
                status = st
                break
            if sub == 0:
                allfinite = True
                for i in range(N_ROW_BUF):
                    if not isfinite(rowb[i]):
                        allfinite = False
                        break
                if not allfinite:
                    # never let NaN/Inf into an accepted row
                    status = STATUS_NONFINITE
                    rowb[0] = t
                    rowb[1] = -1.0
                    break
                for i in range(ncols):
                    table[step, i] = rowb[i]
                nrows = step + 1
                if rowb[ROWX_SC_NORM2] < scmin:
                    scmin = rowb[ROWX_SC_NORM2]
                if rowb[ROWX_SC_NORM2] > scmax:
                    scmax = rowb[ROWX_SC_NORM2]
                if rowb[ROWX_SA_NORM2] > samax:
                    samax = rowb[ROWX_SA_NORM2]
            app0 = ap0
            app1 = ap1
            ap0 = rowb[18]
            ap1 = rowb[19]
            nhist += 1

            for i in range(nstate):
                xtmp[i] = x[i] + half * kb1[i]
            st = _deriv(cfg, icfg, ca, cc, xtmp, t + half, ad0, ad1, kb2, rowb, sab, lamb)
            if st != STATUS_OK:
                status = st
                break
            for i in range(nstate):
                xtmp[i] = x[i] + half * kb2[i]
            st = _deriv(cfg, icfg, ca, cc, xtmp, t + half, ad0, ad1, kb3, rowb, sab, lamb)
            if st != STATUS_OK:
                status = st
                break
            for i in range(nstate):
                xtmp[i] = x[i] + h * kb3[i]
            st = _deriv(cfg, icfg, ca, cc, xtmp, t + h, ad0, ad1, kb4, rowb, sab, lamb)
            if st != STATUS_OK:
                status = st
                break

            for i in range(nstate):
                x[i] = x[i] + sixth * (kb1[i] + 2.0 * kb2[i] + 2.0 * kb3[i] + kb4[i])
            allfinite = True
            for i in range(nstate):
                if not isfinite(x[i]):
                    allfinite = False
                    break
            if not allfinite:
                status = STATUS_NONFINITE
                rowb[0] = (step * substeps + sub + 1) * h
                rowb[1] = -1.0
                break
        if status != STATUS_OK:
            out_info[OI_VIOL_TIME] = rowb[0]
            out_info[OI_VIOL_JOINT] = rowb[1]
            break

    if status == STATUS_OK:
        t = (n_steps * substeps) * h
        if nhist >= 2:
            ad0 = (ap0 - app0) / h
            ad1 = (ap1 - app1) / h
        else:
            ad0 = 0.0
            ad1 = 0.0
        st = _deriv(cfg, icfg, ca, cc, x, t, ad0, ad1, kb1, rowb, sab, lamb)
        if st != STATUS_OK:
            status = st
            out_info[OI_VIOL_TIME] = rowb[0]
            out_info[OI_VIOL_JOINT] = rowb[1]
        else:
            allfinite = True
            for i in range(N_ROW_BUF):
                if not isfinite(rowb[i]):
                    allfinite = False
                    break
            if not allfinite:
                status = STATUS_NONFINITE
                out_info[OI_VIOL_TIME] = t
                out_info[OI_VIOL_JOINT] = -1.0
            else:
                for i in range(ncols):
                    table[n_steps, i] = rowb[i]
                nrows = n_steps + 1
                if rowb[ROWX_SC_NORM2] < scmin:
                    scmin = rowb[ROWX_SC_NORM2]
                if rowb[ROWX_SC_NORM2] > scmax:
                    scmax = rowb[ROWX_SC_NORM2]
                if rowb[ROWX_SA_NORM2] > samax:
                    samax = rowb[ROWX_SA_NORM2]

    out_info[OI_SC_MIN] = scmin
    out_info[OI_SC_MAX] = scmax
    out_info[OI_SA_MAX] = samax
    out_info[OI_N_ROWS] = nrows
    return status
