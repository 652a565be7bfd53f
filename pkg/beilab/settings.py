from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # coefficient fields
    field: str = Field(default="qq", alias="BEILAB_FIELD")
    default_prime: int = Field(default=32003, alias="BEILAB_DEFAULT_PRIME")
    second_prime: int = Field(default=31991, alias="BEILAB_SECOND_PRIME")
    seed: int = Field(default=0, alias="BEILAB_SEED")

    # exhaustive graph searches
    induced_path_max_n: int = Field(default=12, alias="BEILAB_INDUCED_PATH_MAX_N")
    cut_set_max_n: int = Field(default=16, alias="BEILAB_CUT_SET_MAX_N")
    matching_max_edges: int = Field(default=40, alias="BEILAB_MATCHING_MAX_EDGES")

    # Groebner bases
    gb_max_steps: int = Field(default=200000, alias="BEILAB_GB_MAX_STEPS")
    gb_max_degree: int = Field(default=40, alias="BEILAB_GB_MAX_DEGREE")

    # symbolic powers and persistence
    symbolic_max_n: int = Field(default=6, alias="BEILAB_SYMBOLIC_MAX_N")
    symbolic_max_k: int = Field(default=2, alias="BEILAB_SYMBOLIC_MAX_K")
    persistence_max_n: int = Field(default=5, alias="BEILAB_PERSISTENCE_MAX_N")
    persistence_max_k: int = Field(default=2, alias="BEILAB_PERSISTENCE_MAX_K")

    # Betti oracle
    oracle_max_basis: int = Field(default=60000, alias="BEILAB_ORACLE_MAX_BASIS")
    oracle_max_lattice: int = Field(default=200000, alias="BEILAB_ORACLE_MAX_LATTICE")
    oracle_check_dd: bool = Field(default=True, alias="BEILAB_ORACLE_CHECK_DD")
    oracle_parity_shortcut: bool = Field(default=True, alias="BEILAB_ORACLE_PARITY_SHORTCUT")
    probe_trials: int = Field(default=3, alias="BEILAB_PROBE_TRIALS")

    # enumeration budgets (max vertex count per selector family)
    classification_max_n: int = Field(default=8, alias="BEILAB_CLASSIFICATION_MAX_N")
    closed_gb_max_n: int = Field(default=7, alias="BEILAB_CLOSED_GB_MAX_N")
    groebner_max_n: int = Field(default=6, alias="BEILAB_GROEBNER_MAX_N")
    betti_max_n: int = Field(default=5, alias="BEILAB_BETTI_MAX_N")
    workers: int = Field(default=1, alias="BEILAB_WORKERS")

    export_dir: str = Field(default="exports", alias="BEILAB_EXPORT_DIR")
    log_level: str = Field(default="WARNING", alias="BEILAB_LOG_LEVEL")

    model_config = SettingsConfigDict(env_file=".env", extra="ignore", populate_by_name=True)


settings = Settings()
