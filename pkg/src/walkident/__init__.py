"""Exact path counting for the simple random walk and the binomial identities
it proves."""
