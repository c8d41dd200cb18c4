namespace cauchy {}
