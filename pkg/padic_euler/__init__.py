"""p-adic multiple Barnes-Euler zeta and Diamond-Euler Log Gamma functions"""

__version__ = "1.0.0"
