# below: Class to manage isogeny2 options
# purposedly not using a docstring to avoid it being included in the docs

OptionValue = int | bool | None


class IsogenyOptions:
    def __init__(self) -> None:
        self.options_in_use: dict[str, tuple[OptionValue, str]] = {
            "seed": (0, "seed of the random generators (square roots, base points, conic points)"),
            "nb_cpu": (1, "number of worker processes used to try tangent candidates"),
            "base_point_trials": (64, "random affine points tried before giving up on a generic base point"),
            "conic_point_trials": (64, "random lines tried when looking for a point on Mestre's conic"),
            "verification_points": (8, "random points of C used to check a rational representation"),
            "direct_pade_qr": (False, "also reconstruct q and r by Pade at elevated precision"),
            "naive_series_product": (False, "use the schoolbook reference product for series"),
        }
        self.options_default = self.options_in_use.copy()

    def set_option(self, name: str, value: OptionValue) -> None:
        """Set an option to a new value.

        Run isogeny2.options.display_options() to see available options and their current values.

        Parameters
        ----------
        name : str
            The name of the option to set.

        value : int or bool
            The value to set the option to.

        Examples
        --------
        >>> import isogeny2
        >>> isogeny2.options.set_option('seed', 12)
        >>> isogeny2.options.get_option('seed')
        12
        >>> isogeny2.options.reset_options()

        """
        if name in self.options_in_use:
            self.options_in_use[name] = (value, self.options_in_use[name][1])
        else:
            msg = f"Option {name} not recognized."
            raise ValueError(msg)

    def get_option(self, name: str) -> OptionValue:
        """Get the value of an option.

        Parameters
        ----------
        name : str
            The name of the option to get.

        Returns
        -------
        int or bool
            The value of the option.

        Examples
        --------
        >>> import isogeny2
        >>> isogeny2.options.get_option("base_point_trials")
        64

        """
        if name not in self.options_in_use:
            msg = f"Option {name} not recognized."
            raise ValueError(msg)
        return self.options_in_use[name][0]

    def reset_options(self) -> None:
        """Reset all options to their default values.

        Examples
        --------
        >>> import isogeny2
        >>> isogeny2.options.set_option('nb_cpu', 4)
        >>> isogeny2.options.get_option('nb_cpu')
        4

        >>> isogeny2.options.reset_options()
        >>> isogeny2.options.get_option('nb_cpu')
        1

        """
        self.options_in_use = self.options_default.copy()

    def display_options(self) -> str:
        """Return a representation of the current options and their values."""
        max_len_k = max(len(k) for k in self.options_in_use)
        max_len_v = max(len(str(v[0])) for v in self.options_in_use.values())

        return "\n".join(f"{k:<{max_len_k}} : {v[0]!s:>{max_len_v}} ({v[1]})" for k, v in self.options_in_use.items())

    def __repr__(self) -> str:
        return self.display_options()


option_manager = IsogenyOptions()
