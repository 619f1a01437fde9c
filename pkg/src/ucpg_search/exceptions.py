"""
This module contains the exceptions raised by the quantum-walk search toolkit.
"""


class QuantumWalkException(Exception):
    """
    Base class for all errors raised by the toolkit.
    """


class ConfigurationException(QuantumWalkException):
    """
    Exception raised when graph parameters do not describe a valid UCPG.
    """


class DomainException(QuantumWalkException):
    """
    Exception raised when a mathematical precondition is violated.
    """


class CapacityException(QuantumWalkException):
    """
    Exception raised when a dense full-space object would exceed the dense guard.
    """


class DegenerateBasisException(QuantumWalkException):
    """
    Exception raised when the three-vector collapsed basis is requested for m0 = 1.

    Callers should fall back to the two-dimensional (omega, S_V0bar) variant.
    """


class CertificationException(QuantumWalkException):
    """
    Exception raised when two reductions cannot be compared.
    """


class IntegrityException(QuantumWalkException):
    """
    Exception raised when spectral data does not belong to the Hamiltonian it is used with.
    """


class SearchWindowException(QuantumWalkException):
    """
    Exception raised when no success-probability peak is found in the sampled window.
    """


class FitException(QuantumWalkException):
    """
    Exception raised when a scaling fit has too few points.
    """


class PipelineException(QuantumWalkException):
    """
    Exception raised when a pipeline stage fails.

    Attributes:
        stage (str): Name of the failing stage.
    """

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
