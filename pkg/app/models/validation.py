from pydantic import BaseModel


class CheckResult(BaseModel):
    """Outcome of one acceptance check."""

    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"CHECK {self.name} {status} {self.detail}".rstrip()
