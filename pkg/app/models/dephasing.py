from pydantic import BaseModel, ConfigDict, model_validator


class DephasingSample(BaseModel):
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    T: float  # kelvin
    gamma_star: float  # meV


class DephasingTable(BaseModel):
    """
    Measured γ*(T) samples.

    Temperatures must be strictly increasing (never re-sorted on load) and
    γ* non-negative. With `anchor` enabled, temperatures below the first
    sample interpolate linearly towards (0 K, 0 meV).
    """

    model_config = ConfigDict(frozen=True)

    samples: tuple[DephasingSample, ...]
    anchor: bool = True

    @model_validator(mode="after")
    def _validate(self) -> "DephasingTable":
        if len(self.samples) < 2:
            raise ValueError("a dephasing table needs at least 2 samples")
        for prev, cur in zip(self.samples, self.samples[1:]):
            if not cur.T > prev.T:
                raise ValueError(f"non-increasing temperature at T = {cur.T} K")
        for sample in self.samples:
            if not sample.T >= 0:
                raise ValueError(f"negative temperature {sample.T} K")
            if not sample.gamma_star >= 0:
                raise ValueError(f"negative gamma_star at T = {sample.T} K")
        return self

    @property
    def temperatures(self) -> list[float]:
        return [s.T for s in self.samples]

    @property
    def t_max(self) -> float:
        return self.samples[-1].T
