"""Physical constants (CODATA 2018), SI units unless noted."""

HBAR = 1.054_571_817e-34        # reduced Planck constant, J*s
H_PLANCK = 6.626_070_15e-34     # Planck constant, J*s
H_PLANCK_EVS = 4.135_667_696e-15  # Planck constant, eV*s
KB = 1.380_649e-23              # Boltzmann constant, J/K
E_CHARGE = 1.602_176_634e-19    # elementary charge, C
MU_B = 9.274_010_0783e-24       # Bohr magneton, J/T
EV = E_CHARGE                   # 1 eV in J
